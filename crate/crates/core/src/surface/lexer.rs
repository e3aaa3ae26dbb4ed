use super::SurfaceError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(String),
    Flag(String),
    Tilde,
    Amp,
    Bar,
    Arrow,
    Iff,
    DefArrow,
    LikArrow,
    LParen,
    RParen,
    At,
    Caret,
    Question,
    Slash,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Flag(s) => format!("flag `--{s}`"),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::DefArrow => "`=>`".into(),
            Tok::LikArrow => "`~>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::At => "`@`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Question => "`?`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Tokenizes `text`; `#` starts a comment running to the end of the line.
/// The returned stream always ends with `Eof`.
pub(crate) fn lex(text: &str, first_line: usize) -> Result<Vec<Token>, SurfaceError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, first_line, 1);
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let start = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: start.0,
                col: start.1,
            })
        };
        let width = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                if !(c.is_ascii_lowercase() || c == '_') {
                    return Err(SurfaceError::syntax(
                        start.0,
                        start.1,
                        format!("identifier `{word}` must start with a lowercase letter or `_`"),
                    ));
                }
                push(&mut out, Tok::Ident(word));
                j - i
            }
            '0'..='9' | '.' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                push(&mut out, Tok::Num(chars[i..j].iter().collect()));
                j - i
            }
            '-' if next == Some('>') => {
                push(&mut out, Tok::Arrow);
                2
            }
            '-' if next == Some('-') => {
                let mut j = i + 2;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '-') {
                    j += 1;
                }
                push(&mut out, Tok::Flag(chars[i + 2..j].iter().collect()));
                j - i
            }
            '<' if next == Some('-') && chars.get(i + 2) == Some(&'>') => {
                push(&mut out, Tok::Iff);
                3
            }
            '=' if next == Some('>') => {
                push(&mut out, Tok::DefArrow);
                2
            }
            '~' if next == Some('>') => {
                push(&mut out, Tok::LikArrow);
                2
            }
            '~' => {
                push(&mut out, Tok::Tilde);
                1
            }
            '&' => {
                push(&mut out, Tok::Amp);
                1
            }
            '|' => {
                push(&mut out, Tok::Bar);
                1
            }
            '(' => {
                push(&mut out, Tok::LParen);
                1
            }
            ')' => {
                push(&mut out, Tok::RParen);
                1
            }
            '@' => {
                push(&mut out, Tok::At);
                1
            }
            '^' => {
                push(&mut out, Tok::Caret);
                1
            }
            '?' => {
                push(&mut out, Tok::Question);
                1
            }
            '/' => {
                push(&mut out, Tok::Slash);
                1
            }
            other => {
                return Err(SurfaceError::syntax(
                    line,
                    col,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        i += width;
        col += width;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s, 1).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn arrows_are_distinguished() {
        assert_eq!(
            toks("a -> b <-> c => d ~> ~e"),
            vec![
                Tok::Ident("a".into()),
                Tok::Arrow,
                Tok::Ident("b".into()),
                Tok::Iff,
                Tok::Ident("c".into()),
                Tok::DefArrow,
                Tok::Ident("d".into()),
                Tok::LikArrow,
                Tok::Tilde,
                Tok::Ident("e".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn comments_and_flags() {
        assert_eq!(
            toks("poss a # trailing\n--improper"),
            vec![
                Tok::Ident("poss".into()),
                Tok::Ident("a".into()),
                Tok::Flag("improper".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let t = lex("a\n  b", 1).unwrap();
        assert_eq!((t[1].line, t[1].col), (2, 3));
    }

    #[test]
    fn uppercase_identifiers_rejected() {
        assert!(lex("Emu", 1).is_err());
    }
}
