//! Words in a free group: sequences of signed generator letters.
//!
//! Words are stored unreduced; `free_reduce` and `cyclic_reduce` produce
//! normal forms. The empty word is the identity.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::WordParseError;

/// A single signed letter: a generator name and an exponent in `{+1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: String,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: impl Into<String>, exp: i8) -> Self {
        assert!(exp == 1 || exp == -1, "letter exponent must be +1 or -1");
        Letter { gen: gen.into(), exp }
    }

    pub fn inverse(&self) -> Letter {
        Letter { gen: self.gen.clone(), exp: -self.exp }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        // positive letters sort before negative ones of the same generator
        (&self.gen, self.exp == -1).cmp(&(&other.gen, other.exp == -1))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^-1", self.gen)
        }
    }
}

/// A word over generator letters. No reduction is implied by the type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Single positive letter.
    pub fn gen(name: impl Into<String>) -> Self {
        Word(vec![Letter::new(name, 1)])
    }

    /// `name^exp` for any integer exponent, expanded into single letters.
    pub fn power(name: &str, exp: i64) -> Self {
        let sign: i8 = if exp < 0 { -1 } else { 1 };
        Word((0..exp.unsigned_abs()).map(|_| Letter::new(name, sign)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters)
    }

    /// Concatenates several words in order.
    pub fn product(parts: &[&Word]) -> Word {
        let mut letters = Vec::new();
        for p in parts {
            letters.extend(p.0.iter().cloned());
        }
        Word(letters)
    }

    /// `c w c^-1`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        Word::product(&[c, self, &c.inverse()])
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        Word::product(&[&a.inverse(), &b.inverse(), a, b])
    }

    /// Left rotation by `k`: moves the first `k` letters to the end.
    pub fn rotate_left(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    /// Counts occurrences of `gen` regardless of sign.
    pub fn count_gen(&self, gen: &str) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    /// Net exponent sum of `gen`.
    pub fn exponent_sum(&self, gen: &str) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exp as i64).sum()
    }

    /// Parses the compact text form: whitespace-separated letters with an
    /// optional `^<int>` suffix, e.g. `"y^-1 c y c^-1 c^-1"` or `"c^2 d"`.
    pub fn parse_compact(text: &str) -> Result<Word, WordParseError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.rfind('^') {
                Some(pos) => {
                    let (g, e) = token.split_at(pos);
                    let exp: i64 = e[1..]
                        .parse()
                        .map_err(|_| WordParseError::BadExponent(token.to_string()))?;
                    (g, exp)
                }
                None => (token, 1),
            };
            if name.is_empty() {
                return Err(WordParseError::EmptyGenerator(token.to_string()));
            }
            let sign: i8 = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(name, sign));
            }
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Removes all adjacent cancelling pairs. The result is the unique freely
/// reduced form of the word.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for letter in &w.0 {
        if stack.last().is_some_and(|top| top.cancels(letter)) {
            stack.pop();
        } else {
            stack.push(letter.clone());
        }
    }
    Word(stack)
}

/// Cyclic reduction: freely reduces, strips inverse first/last pairs, and
/// rotates while the first and last letters involve the same generator, so
/// that the ends of the result use distinct generators. A nonempty power of
/// a single generator is returned as is. The result represents the same
/// conjugacy class as the input.
pub fn cyclic_reduce(w: &Word) -> Word {
    let mut v = free_reduce(w);
    let mut rotations_left = v.len();
    loop {
        if v.len() < 2 {
            return v;
        }
        let first = &v.0[0];
        let last = &v.0[v.len() - 1];
        if first.cancels(last) {
            let inner = Word(v.0[1..v.len() - 1].to_vec());
            v = free_reduce(&inner);
            rotations_left = v.len();
        } else if first.gen == last.gen {
            if v.0.iter().all(|l| l.gen == first.gen) || rotations_left == 0 {
                return v;
            }
            v = v.rotate_left(1);
            rotations_left -= 1;
        } else {
            return v;
        }
    }
}

/// Replaces every `g^{±1}` in `w` by `r^{±1}` and freely reduces.
pub fn substitute(w: &Word, gen: &str, replacement: &Word) -> Word {
    let mut letters = Vec::new();
    let inv = replacement.inverse();
    for letter in &w.0 {
        if letter.gen == gen {
            let r = if letter.exp == 1 { replacement } else { &inv };
            letters.extend(r.0.iter().cloned());
        } else {
            letters.push(letter.clone());
        }
    }
    free_reduce(&Word(letters))
}

/// Lexicographically least rotation among all rotations of the cyclic
/// reduction of `w` and of its inverse. Two words are equal as unoriented
/// cyclic words (up to rotation, free/cyclic reduction, and inversion) iff
/// their canonical forms are equal.
pub fn canonical_cyclic(w: &Word) -> Word {
    let v = cyclic_reduce(w);
    if v.is_empty() {
        return v;
    }
    let mut best: Option<Word> = None;
    for cand in [&v, &v.inverse()] {
        for k in 0..cand.len() {
            let rot = cand.rotate_left(k);
            if best.as_ref().is_none_or(|b| rot.0 < b.0) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// True iff `a` equals some rotation of `b` (letterwise, no reduction).
pub fn is_rotation_of(a: &Word, b: &Word) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|k| b.rotate_left(k).0 == a.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse_compact(text).unwrap()
    }

    #[test]
    fn free_reduce_cancels_pair() {
        assert!(free_reduce(&w("c c^-1")).is_empty());
    }

    #[test]
    fn free_reduce_example() {
        assert_eq!(free_reduce(&w("y^-1 c c y y^-1 c^-1")), w("y^-1 c"));
    }

    #[test]
    fn free_reduce_fixed_point() {
        let word = w("y^-1 c y");
        assert_eq!(free_reduce(&word), word);
        // idempotent
        assert_eq!(free_reduce(&free_reduce(&w("a a^-1 b b^-1 c"))), w("c"));
    }

    #[test]
    fn cyclic_reduce_rotates_shared_end_generator() {
        // c^-1 d c^4 d^-1 c^-1 is freely reduced but both ends use c; one
        // conjugation step moves the leading c^-1 to the back.
        let input = w("c^-1 d c c c c d^-1 c^-1");
        assert_eq!(cyclic_reduce(&input), w("d c c c c d^-1 c^-1 c^-1"));
    }

    #[test]
    fn cyclic_reduce_strips_conjugation() {
        assert_eq!(cyclic_reduce(&w("d c d^-1")), w("c"));
        assert!(cyclic_reduce(&Word::empty()).is_empty());
    }

    #[test]
    fn cyclic_reduce_pure_power_stable() {
        assert_eq!(cyclic_reduce(&w("c c c")), w("c c c"));
    }

    #[test]
    fn cyclic_reduce_rotation_invariant_class() {
        let word = w("c^-1 d c c c c d^-1 c^-1");
        let reduced = cyclic_reduce(&word);
        for k in 0..word.len() {
            let rotated = cyclic_reduce(&word.rotate_left(k));
            assert!(is_rotation_of(&rotated, &reduced), "rotation {k} left the class");
        }
    }

    #[test]
    fn substitute_examples() {
        // z^-1 cb z cw^-2 with z removed
        assert_eq!(
            substitute(&w("z^-1 cb z cw^-1 cw^-1"), "z", &Word::empty()),
            w("cb cw^-1 cw^-1")
        );
        assert!(substitute(&w("cb cw^-1 cw^-1"), "cb", &w("cw cw")).is_empty());
        let untouched = w("a b a^-1");
        assert_eq!(substitute(&untouched, "q", &w("a")), untouched);
    }

    #[test]
    fn canonical_cyclic_identifies_inverse_rotations() {
        let a = w("d^-1 c c d c^-1 c^-1 c^-1 c^-1");
        let b = w("c c c c d^-1 c^-1 c^-1 d").inverse();
        assert_eq!(canonical_cyclic(&a), canonical_cyclic(&b));
        assert_ne!(canonical_cyclic(&w("a a")), canonical_cyclic(&w("a a a")));
    }

    #[test]
    fn parse_compact_expands_powers() {
        assert_eq!(w("c^2 d^-2"), w("c c d^-1 d^-1"));
        assert!(Word::parse_compact("c^x").is_err());
    }
}
