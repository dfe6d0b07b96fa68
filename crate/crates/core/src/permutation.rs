//! Permutations of `{1..r}`, their cycles, and the orbits of `π × π` on pairs.
//!
//! All public indices are 1-based. Internally images are stored 0-based.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, ParseError, ParseErrorKind};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// One orbit of `π × π` on `{1..r}²`, listed in the order `π × π` visits it
/// and starting from its lexicographically smallest pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    points: Vec<(usize, usize)>,
}

impl Orbit {
    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> (usize, usize) {
        self.points[0]
    }
}

impl Permutation {
    pub fn identity(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyRank);
        }
        Ok(Permutation {
            images: (0..size).collect(),
        })
    }

    /// Builds a permutation from its one-line form, `images[i - 1] = π(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let size = images.len();
        if size == 0 {
            return Err(Error::EmptyRank);
        }
        let mut seen = vec![false; size];
        let mut zero_based = Vec::with_capacity(size);
        for &v in images {
            if v == 0 || v > size || seen[v - 1] {
                return Err(Error::NotABijection { size });
            }
            seen[v - 1] = true;
            zero_based.push(v - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// Builds a permutation of `{1..size}` from disjoint cycles; points not
    /// mentioned are fixed.
    pub fn from_cycles(size: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(size)?;
        let mut seen = vec![false; size];
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if v == 0 || v > size || seen[v - 1] {
                    return Err(Error::NotABijection { size });
                }
                seen[v - 1] = true;
                p.images[v - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(p)
    }

    /// Parses either one-line form (`"2 3 1"`) or cycle form (`"(1 2 3)"`,
    /// `"(1,3)(2)"`). Whitespace and commas both separate entries. Fixed
    /// points may be omitted in cycle form; `"()"` is the identity.
    pub fn parse(text: &str, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyRank);
        }
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(syntax(0, "empty permutation"));
        }
        if tokens.iter().any(|t| matches!(t.kind, TokenKind::Open | TokenKind::Close)) {
            parse_cycles(&tokens, size, text.len())
        } else {
            parse_one_line(&tokens, size)
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `π(i)` for a 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// One-line form, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// True when `π` is a single cycle through every point.
    pub fn is_full_cycle(&self) -> bool {
        let mut len = 1;
        let mut cur = self.images[0];
        while cur != 0 {
            cur = self.images[cur];
            len += 1;
        }
        len == self.size()
    }

    /// Disjoint cycles, each starting at its minimum, sorted by minimum.
    /// Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Orbits of `π × π` on `{1..r}²`, each starting at its lexicographic
    /// minimum, sorted by that minimum.
    pub fn product_orbits(&self) -> Vec<Orbit> {
        let n = self.size();
        let mut seen = vec![false; n * n];
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if seen[i * n + j] {
                    continue;
                }
                let mut points = Vec::new();
                let (mut a, mut b) = (i, j);
                while !seen[a * n + b] {
                    seen[a * n + b] = true;
                    points.push((a + 1, b + 1));
                    a = self.images[a];
                    b = self.images[b];
                }
                out.push(Orbit { points });
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle form with fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (k, v) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TokenKind {
    Open,
    Close,
    Num(usize),
}

#[derive(Clone, Copy, Debug)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn syntax(position: usize, msg: &str) -> Error {
    Error::Parse(ParseError {
        kind: ParseErrorKind::Syntax(msg.into()),
        position,
    })
}

fn at(position: usize, kind: ParseErrorKind) -> Error {
    Error::Parse(ParseError { kind, position })
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        match c {
            b'(' => tokens.push(Token {
                kind: TokenKind::Open,
                pos: k,
            }),
            b')' => tokens.push(Token {
                kind: TokenKind::Close,
                pos: k,
            }),
            b',' => {}
            c if c.is_ascii_whitespace() => {}
            c if c.is_ascii_digit() => {
                let start = k;
                while k + 1 < bytes.len() && bytes[k + 1].is_ascii_digit() {
                    k += 1;
                }
                let value = text[start..=k]
                    .parse::<usize>()
                    .map_err(|_| syntax(start, "number too large"))?;
                tokens.push(Token {
                    kind: TokenKind::Num(value),
                    pos: start,
                });
            }
            _ => {
                let ch = text[k..].chars().next().unwrap_or('?');
                return Err(syntax(k, &format!("unexpected character {ch:?}")));
            }
        }
        k += 1;
    }
    Ok(tokens)
}

fn parse_one_line(tokens: &[Token], size: usize) -> Result<Permutation> {
    if tokens.len() != size {
        let pos = tokens.get(size).map_or(tokens.last().map_or(0, |t| t.pos), |t| t.pos);
        return Err(at(
            pos,
            ParseErrorKind::WrongLength {
                expected: size,
                found: tokens.len(),
            },
        ));
    }
    let mut seen = vec![false; size];
    let mut images = Vec::with_capacity(size);
    for t in tokens {
        let TokenKind::Num(v) = t.kind else {
            unreachable!("one-line tokens are numbers")
        };
        check_point(v, size, &mut seen, t.pos)?;
        images.push(v - 1);
    }
    Ok(Permutation { images })
}

fn check_point(v: usize, size: usize, seen: &mut [bool], pos: usize) -> Result<()> {
    if v == 0 || v > size {
        return Err(at(pos, ParseErrorKind::OutOfRange(v)));
    }
    if seen[v - 1] {
        return Err(at(pos, ParseErrorKind::Duplicate(v)));
    }
    seen[v - 1] = true;
    Ok(())
}

fn parse_cycles(tokens: &[Token], size: usize, end: usize) -> Result<Permutation> {
    let mut images: Vec<usize> = (0..size).collect();
    let mut seen = vec![false; size];
    let mut k = 0;
    while k < tokens.len() {
        let open = tokens[k];
        if open.kind != TokenKind::Open {
            return Err(syntax(open.pos, "expected '('"));
        }
        k += 1;
        let mut cycle = Vec::new();
        loop {
            let Some(t) = tokens.get(k) else {
                return Err(syntax(end, "unclosed cycle"));
            };
            k += 1;
            match t.kind {
                TokenKind::Num(v) => {
                    check_point(v, size, &mut seen, t.pos)?;
                    cycle.push(v - 1);
                }
                TokenKind::Close => break,
                TokenKind::Open => return Err(syntax(t.pos, "nested '('")),
            }
        }
        for (idx, &v) in cycle.iter().enumerate() {
            images[v] = cycle[(idx + 1) % cycle.len()];
        }
    }
    Ok(Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcm(a: usize, b: usize) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        a / gcd(a, b) * b
    }

    #[test]
    fn parse_one_line_and_cycles() {
        assert_eq!(Permutation::parse("2 3 1", 3).unwrap().images(), vec![2, 3, 1]);
        assert_eq!(Permutation::parse("(1 2)", 2).unwrap().images(), vec![2, 1]);
        assert_eq!(Permutation::parse("(1 3)", 3).unwrap().images(), vec![3, 2, 1]);
        assert_eq!(Permutation::parse("(1,3)(2)", 3).unwrap().images(), vec![3, 2, 1]);
        assert_eq!(Permutation::parse("2,3,1", 3).unwrap().images(), vec![2, 3, 1]);
        assert!(Permutation::parse("()", 4).unwrap().is_identity());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = |t: &str, r| match Permutation::parse(t, r) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected parse error, got {other:?}"),
        };
        let e = err("1 1 2", 3);
        assert_eq!(e.kind, ParseErrorKind::Duplicate(1));
        assert_eq!(e.position, 2);
        let e = err("(1 4)", 3);
        assert_eq!(e.kind, ParseErrorKind::OutOfRange(4));
        assert_eq!(e.position, 3);
        let e = err("(1 2", 3);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.position, 4);
        let e = err("1 x 2", 3);
        assert_eq!(e.position, 2);
        let e = err("(1 2)(2 3)", 3);
        assert_eq!(e.kind, ParseErrorKind::Duplicate(2));
        assert_eq!(e.position, 6);
        let e = err("1 2", 3);
        assert_eq!(e.kind, ParseErrorKind::WrongLength { expected: 3, found: 2 });
        let e = err("3 (1 2)", 3);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.position, 0);
        assert!(matches!(err("", 2).kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn cycle_decomposition_examples() {
        let id = Permutation::identity(3).unwrap();
        assert_eq!(id.cycles(), vec![vec![1], vec![2], vec![3]]);
        let p = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2, 3]]);
        let p = Permutation::from_images(&[2, 1, 4, 3]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn product_orbits_examples() {
        let swap = Permutation::parse("(1 2)", 2).unwrap();
        let orbits = swap.product_orbits();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].points(), &[(1, 1), (2, 2)]);
        assert_eq!(orbits[1].points(), &[(1, 2), (2, 1)]);

        let id = Permutation::identity(3).unwrap();
        let orbits = id.product_orbits();
        assert_eq!(orbits.len(), 9);
        assert!(orbits.iter().all(|o| o.len() == 1));

        let c3 = Permutation::parse("(1 2 3)", 3).unwrap();
        let orbits = c3.product_orbits();
        assert_eq!(orbits[0].points(), &[(1, 1), (2, 2), (3, 3)]);
        assert_eq!(orbits[1].points(), &[(1, 2), (2, 3), (3, 1)]);
        assert_eq!(orbits[2].points(), &[(1, 3), (2, 1), (3, 2)]);
    }

    #[test]
    fn orbit_lengths_are_lcm_of_cycle_lengths() {
        let p = Permutation::parse("(1 2)(3 4 5)(6)", 6).unwrap();
        let mut cycle_len = [0usize; 7];
        for c in p.cycles() {
            for &v in &c {
                cycle_len[v] = c.len();
            }
        }
        let orbits = p.product_orbits();
        assert_eq!(orbits.iter().map(Orbit::len).sum::<usize>(), 36);
        for o in &orbits {
            let (i, j) = o.first();
            assert_eq!(o.len(), lcm(cycle_len[i], cycle_len[j]));
            for t in 0..o.len() {
                let (a, b) = o.points()[t];
                assert_eq!((p.apply(a), p.apply(b)), o.points()[(t + 1) % o.len()]);
            }
        }
        assert_eq!(orbits, p.clone().product_orbits());
    }

    #[test]
    fn full_cycle_detection() {
        assert!(Permutation::parse("(1 3 2 4)", 4).unwrap().is_full_cycle());
        assert!(!Permutation::parse("(1 3)(2 4)", 4).unwrap().is_full_cycle());
        assert!(Permutation::identity(1).unwrap().is_full_cycle());
    }

    #[test]
    fn display_is_cycle_form() {
        let p = Permutation::from_images(&[3, 2, 1, 5, 4]).unwrap();
        assert_eq!(alloc::string::ToString::to_string(&p), "(1 3)(4 5)");
        let id = Permutation::identity(2).unwrap();
        assert_eq!(alloc::string::ToString::to_string(&id), "()");
    }
}
