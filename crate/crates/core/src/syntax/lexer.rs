use super::{OpCon, StCon};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub text: String,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LexError {
    pub pos: usize,
    pub found: char,
}

const SYMBOLS: [&str; 14] = [
    "|-", "->", "<-", ">-", "-<", ",", ">", "<", "&", "|", "+", "-", "(", ")",
];

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub(crate) fn is_atom_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if is_ident_start(c)) && cs.all(is_ident_char)
}

/// Identifiers that the grammar uses as connectives or header keywords.
pub(crate) fn is_reserved(s: &str) -> bool {
    const WORDS: [&str; 4] = ["atoms", "props", "acts", "cup"];
    WORDS.contains(&s)
        || OpCon::all()
            .iter()
            .any(|c| c.token() == s || c.family() == s)
        || StCon::all()
            .iter()
            .any(|c| c.token() == s || c.family() == s)
}

pub(crate) fn lex(input: &str) -> Result<Vec<Token>, LexError> {
    let bytes: Vec<(usize, char)> = input.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let (pos, c) = bytes[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let rest = &input[pos..];
        if is_ident_start(c) {
            let len = rest
                .find(|ch: char| !is_ident_char(ch))
                .unwrap_or(rest.len());
            out.push(Token {
                text: rest[..len].to_string(),
                pos,
            });
            k += rest[..len].chars().count();
            continue;
        }
        // `;`, `;b`, `?`, `?b`, `?r`, `?rb` with an optional index.
        if c == ';' || c == '?' {
            let letters = rest[1..]
                .find(|ch: char| !matches!(ch, 'b' | 'r'))
                .unwrap_or(rest.len() - 1);
            let after = &rest[1 + letters..];
            let digits = after
                .find(|ch: char| !ch.is_ascii_digit())
                .unwrap_or(after.len());
            let len = 1 + letters + digits;
            out.push(Token {
                text: rest[..len].to_string(),
                pos,
            });
            k += len;
            continue;
        }
        if let Some(tail) = rest.strip_prefix('^') {
            if tail.starts_with("op") || tail.starts_with("om") {
                out.push(Token {
                    text: rest[..3].to_string(),
                    pos,
                });
                k += 3;
                continue;
            }
        }
        if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            out.push(Token {
                text: sym.to_string(),
                pos,
            });
            k += sym.len();
            continue;
        }
        if matches!(c, '[' | ']' | '~') {
            out.push(Token {
                text: c.to_string(),
                pos,
            });
            k += 1;
            continue;
        }
        return Err(LexError { pos, found: c });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(s: &str) -> Vec<String> {
        lex(s).unwrap().into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn splits_indexed_punctuation() {
        assert_eq!(texts("a ;b1 b;3c"), ["a", ";b1", "b", ";3", "c"]);
        assert_eq!(
            texts("p?1 p?rb0 X?b1"),
            ["p", "?1", "p", "?rb0", "X", "?b1"]
        );
        assert_eq!(
            texts("a^op^om |- b+-"),
            ["a", "^op", "^om", "|-", "b", "+", "-"]
        );
    }

    #[test]
    fn prefers_longest_symbol() {
        assert_eq!(
            texts("p->q<-r>-s-<t"),
            ["p", "->", "q", "<-", "r", ">-", "s", "-<", "t"]
        );
        assert_eq!(texts("X |- Y | Z"), ["X", "|-", "Y", "|", "Z"]);
    }

    #[test]
    fn reports_bad_character() {
        assert_eq!(lex("p # q"), Err(LexError { pos: 2, found: '#' }));
    }
}
