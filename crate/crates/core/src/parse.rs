//! Parser for the `.pres` presentation format.
//!
//! ```text
//! pres := "p" "=" INT "gens" ":" ident ("," ident)* "rels" ":" [word (";" word)*]
//! word := term+        term := atom ("^" SIGNED_INT)?
//! atom := ident | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! Whitespace is insignificant, juxtaposition is multiplication and
//! `[u,v]` expands to `u⁻¹v⁻¹uv`. A `#` starts a comment running to the end
//! of the line.

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::word::{GroupWord, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Minus,
    Eq,
    Colon,
    Comma,
    Semi,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>, line: &mut usize, col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if c.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars, &mut line, &mut col);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    bump(&mut chars, &mut line, &mut col);
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    bump(&mut chars, &mut line, &mut col);
                } else {
                    break;
                }
            }
            let v = s.parse().map_err(|_| Error::Syntax {
                line: tl,
                col: tc,
                msg: format!("integer `{s}` out of range"),
            })?;
            Tok::Int(v)
        } else {
            let t = match c {
                '-' => Tok::Minus,
                '=' => Tok::Eq,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                other => {
                    return Err(Error::Syntax { line: tl, col: tc, msg: format!("unexpected character `{other}`") })
                }
            };
            bump(&mut chars, &mut line, &mut col);
            t
        };
        out.push(Token { tok, line: tl, col: tc });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: &'a [String],
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a [String]) -> Result<Self> {
        let toks = tokenize(text)?;
        let lines = text.split('\n').count();
        let last_col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Ok(Parser { toks, pos: 0, names, end: (lines, last_col) })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax { line, col, msg: msg.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(n)) => format!("`{n}`"),
            Some(t) => format!("{t:?}"),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", self.describe()))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected `{kw}`, found {}", self.describe())),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected identifier, found {}", self.describe())),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let (line, col) = self.here();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                v
            }
            _ => return self.error(format!("expected integer exponent, found {}", self.describe())),
        };
        let v = i64::try_from(v).map_err(|_| Error::Syntax { line, col, msg: "exponent out of range".into() })?;
        if v == 0 {
            return Err(Error::ZeroExponent { line, col });
        }
        Ok(if neg { -v } else { v })
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::LBrack))
    }

    fn word(&mut self) -> Result<GroupWord> {
        if !self.starts_atom() {
            return self.error(format!("expected a word, found {}", self.describe()));
        }
        let mut acc = GroupWord::identity();
        while self.starts_atom() {
            let atom = self.atom()?;
            let term = if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                let e = self.signed_int()?;
                atom.pow(e)
            } else {
                atom
            };
            acc = acc.multiply(&term);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<GroupWord> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(GroupWord::generator(i)),
                    None => Err(Error::UnknownGenerator { name, line, col }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(w)
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(Tok::Comma, "`,` inside commutator")?;
                let v = self.word()?;
                self.expect(Tok::RBrack, "`]`")?;
                Ok(GroupWord::commutator(&u, &v))
            }
            _ => self.error(format!("expected generator, `(` or `[`, found {}", self.describe())),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.error(format!("unexpected trailing {}", self.describe()))
        } else {
            Ok(())
        }
    }
}

/// Parses a presentation in the `.pres` format.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let empty: [String; 0] = [];
    let mut head = Parser::new(text, &empty)?;
    head.expect_keyword("p")?;
    head.expect(Tok::Eq, "`=`")?;
    let (pl, pc) = head.here();
    let p = match head.peek() {
        Some(&Tok::Int(v)) => {
            head.pos += 1;
            v
        }
        _ => return head.error(format!("expected prime, found {}", head.describe())),
    };
    let prime = Prime::new(p).map_err(|e| match e {
        Error::NonPrime(_) => e,
        _ => Error::Syntax { line: pl, col: pc, msg: e.to_string() },
    })?;
    head.expect_keyword("gens")?;
    head.expect(Tok::Colon, "`:`")?;
    let mut names = vec![head.ident()?];
    while head.peek() == Some(&Tok::Comma) {
        head.pos += 1;
        names.push(head.ident()?);
    }
    for (i, n) in names.iter().enumerate() {
        if n == "rels" || n == "gens" {
            return Err(Error::Syntax { line: pl, col: pc, msg: format!("`{n}` is reserved") });
        }
        if names[..i].contains(n) {
            return Err(Error::DuplicateGenerator(n.clone()));
        }
    }
    head.expect_keyword("rels")?;
    head.expect(Tok::Colon, "`:`")?;

    let mut body = Parser { toks: head.toks, pos: head.pos, names: &names, end: head.end };
    let mut relators = Vec::new();
    if body.pos < body.toks.len() {
        loop {
            let w = body.word()?;
            if w.is_identity() {
                return Err(Error::TrivialRelator(relators.len()));
            }
            relators.push(w);
            if body.peek() == Some(&Tok::Semi) {
                body.pos += 1;
            } else {
                break;
            }
        }
    }
    body.finish()?;
    Presentation::new(prime, names, relators)
}

/// Parses a single word over the given generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<GroupWord> {
    let mut p = Parser::new(text, names)?;
    if p.peek() == Some(&Tok::Int(1)) && p.toks.len() == 1 {
        return Ok(GroupWord::identity());
    }
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_expands() {
        let pres = parse_presentation("p=2 gens: x1,x2 rels: [x1,x2]").unwrap();
        assert_eq!(pres.relators()[0], GroupWord::from_syllables([(0, -1), (1, -1), (0, 1), (1, 1)]));
    }

    #[test]
    fn simple_power() {
        let pres = parse_presentation("p=2 gens: x rels: x^2").unwrap();
        assert_eq!(pres.relators(), &[GroupWord::power(0, 2)]);
        assert_eq!(pres.prime().get(), 2);
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(parse_presentation("p=4 gens: x rels: x"), Err(Error::NonPrime(4)));
    }

    #[test]
    fn zero_exponent_located() {
        let err = parse_presentation("p=3 gens: x\nrels: x^0").unwrap_err();
        assert_eq!(err, Error::ZeroExponent { line: 2, col: 9 });
    }

    #[test]
    fn unknown_generator_located() {
        let err = parse_presentation("p=3 gens: x rels: x y").unwrap_err();
        assert_eq!(err, Error::UnknownGenerator { name: "y".into(), line: 1, col: 21 });
    }

    #[test]
    fn trivial_relator() {
        assert_eq!(parse_presentation("p=3 gens: x, y rels: x y; x x^-1"), Err(Error::TrivialRelator(1)));
        assert_eq!(parse_presentation("p=3 gens: x, y rels: [x, x]"), Err(Error::TrivialRelator(0)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_presentation("p=3 gens x rels: x") {
            Err(Error::Syntax { line: 1, col: 10, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_presentation("p=3 gens: x rels: (x") {
            Err(Error::Syntax { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_presentation("p=3 gens: x rels: x $"), Err(Error::Syntax { col: 21, .. })));
    }

    #[test]
    fn nested_and_whitespace() {
        let pres =
            parse_presentation("# Example group\np = 3\n gens : x1 , x2\n rels : x1^3 [ x2 , x1^3 ] ; (x1 x2)^-2")
                .unwrap();
        assert_eq!(pres.relators().len(), 2);
        assert_eq!(pres.relators()[0], GroupWord::from_syllables([(0, 3), (1, -1), (0, -3), (1, 1), (0, 3)]));
        assert_eq!(pres.relators()[1], GroupWord::from_syllables([(1, -1), (0, -1), (1, -1), (0, -1)]));
    }

    #[test]
    fn empty_relator_list() {
        let pres = parse_presentation("p=2 gens: a, b rels:").unwrap();
        assert_eq!(pres.num_generators(), 2);
        assert!(pres.relators().is_empty());
    }

    #[test]
    fn display_round_trip() {
        let pres = parse_presentation("p=5 gens: a,b,c rels: [a^5,b] c^-2; a b a").unwrap();
        let printed = pres.to_string();
        let again = parse_presentation(&printed).unwrap();
        assert_eq!(again, pres);
        assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn word_parsing() {
        let names = vec!["y1".to_string(), "y2".to_string()];
        assert_eq!(parse_word("y1^-1", &names).unwrap(), GroupWord::power(0, -1));
        assert!(parse_word("1", &names).unwrap().is_identity());
        assert!(parse_word("y3", &names).is_err());
    }
}
