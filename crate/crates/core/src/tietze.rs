//! Certificate-checked Tietze transformations and the greedy auto-simplifier.
//!
//! Consequence steps carry explicit certificates: products of conjugated
//! relators verified by free reduction alone, so every move is independently
//! re-checkable without a word-problem engine.

use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::PresentationError;
use crate::presentation::Presentation;
use crate::word::{cyclic_reduce, free_reduce, substitute, Letter, Word};

/// One factor `c r^s c^-1` of a certificate product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertFactor {
    pub conjugator: Word,
    pub relator: usize,
    pub sign: i8,
}

/// Proof that a word is a consequence of the relators: the factor product,
/// multiplied by the target's inverse, freely reduces to the empty word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub factors: Vec<CertFactor>,
}

impl Certificate {
    pub fn empty() -> Self {
        Certificate::default()
    }

    pub fn new(factors: Vec<CertFactor>) -> Self {
        Certificate { factors }
    }

    /// The factor product as a raw word.
    pub fn product(&self, p: &Presentation) -> Option<Word> {
        let mut letters = Vec::new();
        for f in &self.factors {
            let r = p.relators.get(f.relator)?;
            let body = if f.sign == 1 { r.clone() } else { r.inverse() };
            let w = body.conjugate_by(&f.conjugator);
            letters.extend(w.0);
        }
        Some(Word(letters))
    }
}

/// True iff the certificate's product freely equals `target`.
pub fn verify_certificate(p: &Presentation, target: &Word, cert: &Certificate) -> bool {
    match cert.product(p) {
        Some(product) => free_reduce(&product.concat(&target.inverse())).is_empty(),
        None => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TietzeMove {
    /// Adds generator `gen` with defining relator `gen * word^-1`.
    AddGenerator { gen: String, word: Word },
    /// Eliminates `gen` by solving relator `via`, which must contain
    /// exactly one occurrence of `gen`, and substituting everywhere.
    RemoveGenerator { gen: String, via: usize },
    /// Appends `word`; the certificate proves it is a consequence.
    AddRelator { word: Word, cert: Certificate },
    /// Deletes relator `index`; the certificate proves it follows from the
    /// remaining relators (its factors may not reference `index`).
    RemoveRelator { index: usize, cert: Certificate },
    FreeReduceAll,
    CyclicReduceAll,
}

/// Applies one move. Certificates are verified before anything changes, so
/// a returned presentation always presents the same group.
pub fn tietze_apply(p: &Presentation, m: &TietzeMove) -> Result<Presentation, PresentationError> {
    match m {
        TietzeMove::AddGenerator { gen, word } => {
            if p.has_generator(gen) {
                return Err(PresentationError::DuplicateGenerator(gen.clone()));
            }
            for l in &word.0 {
                if !p.has_generator(&l.gen) {
                    return Err(PresentationError::UnknownGenerator(l.gen.clone()));
                }
            }
            let mut out = p.clone();
            out.generators.push(gen.clone());
            out.relators.push(free_reduce(&Word::gen(gen.clone()).concat(&word.inverse())));
            Ok(out)
        }
        TietzeMove::RemoveGenerator { gen, via } => {
            if !p.has_generator(gen) {
                return Err(PresentationError::UnknownGenerator(gen.clone()));
            }
            let relator =
                p.relators.get(*via).ok_or(PresentationError::RelatorIndex(*via))?;
            let occurrences: Vec<usize> = relator
                .0
                .iter()
                .enumerate()
                .filter(|(_, l)| l.gen == *gen)
                .map(|(i, _)| i)
                .collect();
            if occurrences.len() != 1 {
                return Err(PresentationError::OccurrenceCount {
                    gen: gen.clone(),
                    index: *via,
                    count: occurrences.len(),
                });
            }
            let pos = occurrences[0];
            let before = Word(relator.0[..pos].to_vec());
            let after = Word(relator.0[pos + 1..].to_vec());
            // u g v = 1 gives g = u^-1 v^-1; u g^-1 v = 1 gives g = v u
            let replacement = if relator.0[pos].exp == 1 {
                free_reduce(&before.inverse().concat(&after.inverse()))
            } else {
                free_reduce(&after.concat(&before))
            };
            let mut out = Presentation::new(
                p.generators.iter().filter(|g| *g != gen).cloned().collect(),
                Vec::new(),
            );
            for (i, r) in p.relators.iter().enumerate() {
                if i != *via {
                    out.relators.push(substitute(r, gen, &replacement));
                }
            }
            Ok(out)
        }
        TietzeMove::AddRelator { word, cert } => {
            for l in &word.0 {
                if !p.has_generator(&l.gen) {
                    return Err(PresentationError::UnknownGenerator(l.gen.clone()));
                }
            }
            if !verify_certificate(p, word, cert) {
                return Err(PresentationError::CertificateRejected);
            }
            let mut out = p.clone();
            out.relators.push(word.clone());
            Ok(out)
        }
        TietzeMove::RemoveRelator { index, cert } => {
            let target =
                p.relators.get(*index).ok_or(PresentationError::RelatorIndex(*index))?;
            for f in &cert.factors {
                if f.relator == *index {
                    return Err(PresentationError::CertificateSelfReference(*index));
                }
                if f.relator >= p.relators.len() {
                    return Err(PresentationError::RelatorIndex(f.relator));
                }
            }
            if !verify_certificate(p, target, cert) {
                return Err(PresentationError::CertificateRejected);
            }
            let mut out = p.clone();
            out.relators.remove(*index);
            Ok(out)
        }
        TietzeMove::FreeReduceAll => {
            let mut out = p.clone();
            out.relators = out.relators.iter().map(free_reduce).collect();
            Ok(out)
        }
        TietzeMove::CyclicReduceAll => {
            let mut out = p.clone();
            out.relators = out.relators.iter().map(cyclic_reduce).collect();
            Ok(out)
        }
    }
}

/// Greedy simplification to a fixed point: reduce all relators, delete
/// empty ones, and while some relator contains exactly one occurrence of
/// some generator, solve for it and eliminate it. The eliminated pair is
/// chosen deterministically: shortest relator, then lexicographically least
/// relator word, then least generator name. Returns the fixed point and the
/// full move log, which re-applies to reproduce the output exactly.
pub fn auto_simplify(p: &Presentation) -> (Presentation, Vec<TietzeMove>) {
    let mut current = p.clone();
    let mut log = Vec::new();
    let apply = |cur: &Presentation, m: TietzeMove, log: &mut Vec<TietzeMove>| {
        let next = tietze_apply(cur, &m).expect("auto_simplify emits only valid moves");
        log.push(m);
        next
    };
    loop {
        let reduced = tietze_apply(&current, &TietzeMove::FreeReduceAll).unwrap();
        if reduced != current {
            current = apply(&current, TietzeMove::FreeReduceAll, &mut log);
        }
        let reduced = tietze_apply(&current, &TietzeMove::CyclicReduceAll).unwrap();
        if reduced != current {
            current = apply(&current, TietzeMove::CyclicReduceAll, &mut log);
        }
        while let Some(i) = current.relators.iter().position(Word::is_empty) {
            current = apply(
                &current,
                TietzeMove::RemoveRelator { index: i, cert: Certificate::empty() },
                &mut log,
            );
        }
        // candidate (relator, generator) pairs with exactly one occurrence
        let mut best: Option<(usize, Vec<Letter>, String, usize)> = None;
        for (i, r) in current.relators.iter().enumerate() {
            for g in &current.generators {
                if r.count_gen(g) == 1 {
                    let key = (r.len(), r.0.clone(), g.clone(), i);
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
            }
        }
        match best {
            Some((_, _, gen, via)) => {
                current = apply(&current, TietzeMove::RemoveGenerator { gen, via }, &mut log);
            }
            None => break,
        }
    }
    (current, log)
}

/// Bounds for the bounded certificate search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_factors: usize,
    pub max_conjugator_len: usize,
    pub max_iterations: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_factors: 4, max_conjugator_len: 6, max_iterations: 100_000 }
    }
}

#[derive(PartialEq, Eq)]
struct SearchNode {
    priority: usize,
    seq: usize,
    remainder: Word,
    factors: Vec<CertFactor>,
}

impl Ord for SearchNode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap is a max-heap; invert for best-first
        other.priority.cmp(&self.priority).then(other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for SearchNode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Best-first bounded search for a certificate expressing `target` as a
/// product of at most `max_factors` conjugated relators. Deterministic.
pub fn find_certificate(
    p: &Presentation,
    target: &Word,
    bounds: SearchBounds,
) -> Option<Certificate> {
    let start = free_reduce(target);
    if start.is_empty() {
        return Some(Certificate::empty());
    }
    let reduced_relators: Vec<Word> = p.relators.iter().map(free_reduce).collect();

    let mut heap = BinaryHeap::new();
    let mut seq = 0usize;
    heap.push(SearchNode { priority: start.len(), seq, remainder: start.clone(), factors: vec![] });
    let mut visited: HashMap<Vec<Letter>, usize> = HashMap::new();
    visited.insert(start.0, 0);

    let mut iterations = 0usize;
    while let Some(node) = heap.pop() {
        iterations += 1;
        if iterations > bounds.max_iterations {
            return None;
        }
        if node.factors.len() == bounds.max_factors {
            continue;
        }
        for (ri, relator) in reduced_relators.iter().enumerate() {
            if relator.is_empty() {
                continue;
            }
            for sign in [1i8, -1] {
                let body = if sign == 1 { relator.clone() } else { relator.inverse() };
                for rot in 0..body.len() {
                    let rot_conj = Word(body.0[..rot].to_vec()).inverse();
                    let depth_limit = bounds.max_conjugator_len.min(node.remainder.len());
                    for dlen in 0..=depth_limit {
                        let prefix = Word(node.remainder.0[..dlen].to_vec());
                        let conjugator = free_reduce(&prefix.concat(&rot_conj));
                        if conjugator.len() > bounds.max_conjugator_len {
                            continue;
                        }
                        let factor_inv = body.inverse().conjugate_by(&conjugator);
                        let next = free_reduce(&factor_inv.concat(&node.remainder));
                        let depth = node.factors.len() + 1;
                        if next.is_empty() {
                            let mut factors = node.factors.clone();
                            factors.push(CertFactor { conjugator, relator: ri, sign });
                            return Some(Certificate::new(factors));
                        }
                        if depth == bounds.max_factors {
                            continue;
                        }
                        match visited.get(&next.0) {
                            Some(&d) if d <= depth => continue,
                            _ => {}
                        }
                        visited.insert(next.0.clone(), depth);
                        seq += 1;
                        let mut factors = node.factors.clone();
                        factors.push(CertFactor { conjugator, relator: ri, sign });
                        heap.push(SearchNode {
                            priority: next.len() + 2 * depth,
                            seq,
                            remainder: next,
                            factors,
                        });
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse_compact(text).unwrap()
    }

    fn pres(gens: &[&str], relators: &[&str]) -> Presentation {
        Presentation::new(
            gens.iter().map(|s| s.to_string()).collect(),
            relators.iter().map(|s| w(s)).collect(),
        )
    }

    #[test]
    fn conjugated_relator_verifies() {
        let p = pres(&["c", "d"], &["d^-1 c c d c^-1 c^-1 c^-1 c^-1"]);
        let target = p.relators[0].conjugate_by(&w("c"));
        let cert = Certificate::new(vec![CertFactor { conjugator: w("c"), relator: 0, sign: 1 }]);
        assert!(verify_certificate(&p, &target, &cert));
        assert!(!verify_certificate(&p, &w("c"), &cert));
    }

    #[test]
    fn empty_certificate_rejects_nonempty_target() {
        let p = pres(&["q", "x"], &["q"]);
        let target = Word::commutator(&w("q"), &w("x"));
        assert!(!verify_certificate(&p, &target, &Certificate::empty()));
        assert!(matches!(
            tietze_apply(&p, &TietzeMove::AddRelator { word: target, cert: Certificate::empty() }),
            Err(PresentationError::CertificateRejected)
        ));
    }

    #[test]
    fn add_generator_defining_relator() {
        let p = pres(&["q", "y", "t"], &["t^-1 q t q^-4"]);
        let out = tietze_apply(
            &p,
            &TietzeMove::AddGenerator { gen: "x1".into(), word: w("y t^-1") },
        )
        .unwrap();
        assert_eq!(out.relators.last().unwrap(), &w("x1 t y^-1"));
        assert!(tietze_apply(
            &out,
            &TietzeMove::AddGenerator { gen: "x1".into(), word: w("y") }
        )
        .is_err());
    }

    #[test]
    fn remove_literal_duplicate_relator() {
        let p = pres(&["a"], &["a a", "a a"]);
        let cert =
            Certificate::new(vec![CertFactor { conjugator: Word::empty(), relator: 0, sign: 1 }]);
        let out = tietze_apply(&p, &TietzeMove::RemoveRelator { index: 1, cert }).unwrap();
        assert_eq!(out.relators.len(), 1);
        // a certificate may not cite the relator being removed
        let self_cert =
            Certificate::new(vec![CertFactor { conjugator: Word::empty(), relator: 1, sign: 1 }]);
        assert!(matches!(
            tietze_apply(&p, &TietzeMove::RemoveRelator { index: 1, cert: self_cert }),
            Err(PresentationError::CertificateSelfReference(1))
        ));
    }

    #[test]
    fn remove_generator_substitutes_everywhere() {
        let p = pres(&["a", "b"], &["b^-1 a a", "a b a"]);
        assert!(matches!(
            tietze_apply(&p, &TietzeMove::RemoveGenerator { gen: "a".into(), via: 0 }),
            Err(PresentationError::OccurrenceCount { count: 2, .. })
        ));
        let out =
            tietze_apply(&p, &TietzeMove::RemoveGenerator { gen: "b".into(), via: 0 }).unwrap();
        assert_eq!(out.generators, vec!["a"]);
        assert_eq!(out.relators, vec![w("a a a a")]);
    }

    #[test]
    fn auto_simplify_drops_dead_generator() {
        let p = pres(&["a", "b"], &["b"]);
        let (out, log) = auto_simplify(&p);
        assert_eq!(out.generators, vec!["a"]);
        assert!(out.relators.is_empty());
        // replaying the log reproduces the output
        let mut replay = p.clone();
        for m in &log {
            replay = tietze_apply(&replay, m).unwrap();
        }
        assert_eq!(replay, out);
    }

    #[test]
    fn auto_simplify_k_presentation_reaches_one_relator() {
        let p = pres(
            &["c", "d", "z"],
            &["c^-1 d c c z^-1", "z^-1 c d c^-1 c^-1"],
        );
        let (out, _) = auto_simplify(&p);
        assert_eq!(out.generators.len(), 2);
        assert_eq!(out.relators.len(), 1);
        let bs24 = pres(&["c", "d"], &["d^-1 c c d c^-1 c^-1 c^-1 c^-1"]);
        assert!(crate::presentation::rename_isomorphic(&out, &bs24).is_some());
    }

    #[test]
    fn bounded_search_finds_commuting_consequence() {
        // [q, t th^-1] follows from q^t = q^4 and q^th = q^4
        let p = pres(&["q", "t", "th"], &["t^-1 q t q^-4", "th^-1 q th q^-4"]);
        let target = Word::commutator(&w("q"), &w("t th^-1"));
        let cert = find_certificate(&p, &target, SearchBounds::default())
            .expect("certificate exists within default bounds");
        assert!(cert.factors.len() <= 4);
        assert!(cert.factors.iter().all(|f| f.conjugator.len() <= 6));
        assert!(verify_certificate(&p, &target, &cert));
    }

    #[test]
    fn remove_generator_example_fails_cleanly() {
        let p = pres(&["a"], &["a a"]);
        assert!(matches!(
            tietze_apply(&p, &TietzeMove::RemoveGenerator { gen: "q".into(), via: 0 }),
            Err(PresentationError::UnknownGenerator(_))
        ));
        assert!(matches!(
            tietze_apply(&p, &TietzeMove::RemoveGenerator { gen: "a".into(), via: 7 }),
            Err(PresentationError::RelatorIndex(7))
        ));
    }
}
