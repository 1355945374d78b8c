//! Splits one line of a `.ctree` document into tokens.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Word,
    /// A parenthesised label with inner whitespace removed.
    Group,
    Eq,
    LBrace,
    RBrace,
    Comma,
    Arrow,
    Slash,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub(crate) kind: Kind,
    pub(crate) text: String,
    /// 1-based, in characters.
    pub(crate) column: usize,
}

/// `(column, message)` for a character the lexer cannot place.
pub(crate) type LexError = (usize, String);

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || "_.:@+!?'-".contains(c)
}

pub(crate) fn tokenize(line: &str) -> Result<Vec<Token>, LexError> {
    let chars: Vec<char> = line.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = |kind: Kind| Token {
            kind,
            text: c.to_string(),
            column,
        };
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '=' => {
                tokens.push(single(Kind::Eq));
                i += 1;
            }
            '{' => {
                tokens.push(single(Kind::LBrace));
                i += 1;
            }
            '}' => {
                tokens.push(single(Kind::RBrace));
                i += 1;
            }
            ',' => {
                tokens.push(single(Kind::Comma));
                i += 1;
            }
            '/' => {
                tokens.push(single(Kind::Slash));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                tokens.push(Token {
                    kind: Kind::Arrow,
                    text: "->".into(),
                    column,
                });
                i += 2;
            }
            '(' => {
                let mut depth = 0usize;
                let mut text = String::new();
                loop {
                    match chars.get(i) {
                        None | Some('#') => return Err((column, "unterminated `(`".into())),
                        Some(&ch) => {
                            if ch == '(' {
                                depth += 1;
                            } else if ch == ')' {
                                depth -= 1;
                            }
                            if !ch.is_whitespace() {
                                text.push(ch);
                            }
                            i += 1;
                            if depth == 0 {
                                break;
                            }
                        }
                    }
                }
                tokens.push(Token {
                    kind: Kind::Group,
                    text,
                    column,
                });
            }
            c if is_word_char(c) => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
                {
                    i += 1;
                }
                tokens.push(Token {
                    kind: Kind::Word,
                    text: chars[start..i].iter().collect(),
                    column,
                });
            }
            other => return Err((column, format!("unexpected character `{other}`"))),
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(line: &str) -> Vec<Kind> {
        tokenize(line).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn edge_line() {
        let t = tokenize("edge S0->S1 p=1/2 # c").unwrap();
        let texts: Vec<_> = t.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["edge", "S0", "->", "S1", "p", "=", "1", "/", "2"]);
        assert_eq!(t[3].column, 10);
    }

    #[test]
    fn groups_drop_whitespace() {
        let t = tokenize("outcome ( no, (left) , black )").unwrap();
        assert_eq!(t[1].kind, Kind::Group);
        assert_eq!(t[1].text, "(no,(left),black)");
        assert_eq!(tokenize("outcome (a").unwrap_err().0, 9);
        assert_eq!(tokenize("outcome (a # b)").unwrap_err().0, 9);
    }

    #[test]
    fn braces_and_errors() {
        assert_eq!(
            kinds("{a, b}"),
            [Kind::LBrace, Kind::Word, Kind::Comma, Kind::Word, Kind::RBrace]
        );
        assert_eq!(tokenize("node a;").unwrap_err(), (7, "unexpected character `;`".into()));
        assert_eq!(tokenize("  # only a comment").unwrap(), vec![]);
        assert_eq!(tokenize("p=0.5").unwrap()[2].text, "0.5");
    }
}
