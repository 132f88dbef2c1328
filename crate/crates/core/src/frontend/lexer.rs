use super::error::{FrontendError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

// longest first
const SYMBOLS: &[&str] = &[
    ":=", "/=", "<=", ">=", "=>", "..", "||", "=", "<", ">", ":", "+", "-", "(", ")", "&", ",",
    "{", "}", "@", ";",
];

pub fn tokenize(src: &str) -> Result<Vec<Token>, FrontendError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            advance(&mut i, &mut line, &mut col, 2);
            loop {
                if i + 1 >= chars.len() {
                    return Err(FrontendError::Syntax {
                        pos,
                        expected: "`*/` closing the comment".into(),
                        found: "end of input".into(),
                    });
                }
                if chars[i] == '*' && chars[i + 1] == '/' {
                    advance(&mut i, &mut line, &mut col, 2);
                    break;
                }
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut line, &mut col, 1);
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col, 1);
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<i64>().map_err(|_| FrontendError::Syntax {
                pos,
                expected: "integer literal within 64 bits".into(),
                found: format!("`{text}`"),
            })?;
            out.push(Token {
                tok: Tok::Int(n),
                pos,
            });
            continue;
        }
        let sym = SYMBOLS.iter().find(|s| {
            s.chars()
                .enumerate()
                .all(|(k, sc)| chars.get(i + k) == Some(&sc))
        });
        match sym {
            Some(s) => {
                advance(&mut i, &mut line, &mut col, s.len());
                out.push(Token {
                    tok: Tok::Sym(s),
                    pos,
                });
            }
            None => {
                return Err(FrontendError::Syntax {
                    pos,
                    expected: "a token".into(),
                    found: format!("`{c}`"),
                })
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn symbols_and_intervals() {
        assert_eq!(
            toks("cc : -1..1 & x/=y"),
            vec![
                Tok::Ident("cc".into()),
                Tok::Sym(":"),
                Tok::Sym("-"),
                Tok::Int(1),
                Tok::Sym(".."),
                Tok::Int(1),
                Tok::Sym("&"),
                Tok::Ident("x".into()),
                Tok::Sym("/="),
                Tok::Ident("y".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_are_skipped_and_positions_tracked() {
        let t = tokenize("/* a\n comment */\n  x := 1").unwrap();
        assert_eq!(t[0].tok, Tok::Ident("x".into()));
        assert_eq!(t[0].pos, Pos { line: 3, col: 3 });
    }

    #[test]
    fn unterminated_comment() {
        assert!(matches!(
            tokenize("x /* oops"),
            Err(FrontendError::Syntax { .. })
        ));
    }

    #[test]
    fn stray_character() {
        let err = tokenize("x := 1 $").unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 1, col: 8 }));
    }
}
