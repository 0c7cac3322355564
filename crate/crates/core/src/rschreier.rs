//! Reidemeister-Schreier rewriting for kernels of homomorphisms onto finite
//! cyclic groups, using the transversal of powers of a designated generator.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::RsError;
use crate::presentation::Presentation;
use crate::word::{free_reduce, Letter, Word};

/// A homomorphism onto Z/k: residue per generator, with a designated
/// generator whose residue generates the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicHom {
    pub modulus: usize,
    pub images: BTreeMap<String, usize>,
    pub designated: String,
}

impl CyclicHom {
    pub fn new(modulus: usize, images: BTreeMap<String, usize>, designated: impl Into<String>) -> Self {
        CyclicHom { modulus, images, designated: designated.into() }
    }

    fn residue(&self, gen: &str) -> Result<usize, RsError> {
        self.images
            .get(gen)
            .map(|r| r % self.modulus.max(1))
            .ok_or_else(|| RsError::MissingImage(gen.to_string()))
    }

    /// Checks well-definedness on `p`: every relator has exponent-residue
    /// sum 0 mod k, and the designated residue is a unit.
    pub fn validate(&self, p: &Presentation) -> Result<(), RsError> {
        if self.modulus == 0 {
            return Err(RsError::ZeroModulus);
        }
        let rho = self.residue(&self.designated)?;
        if mod_inverse(rho, self.modulus).is_none() {
            return Err(RsError::NotAUnit {
                gen: self.designated.clone(),
                residue: rho,
                modulus: self.modulus,
            });
        }
        for g in &p.generators {
            self.residue(g)?;
        }
        for (index, r) in p.relators.iter().enumerate() {
            let mut sum = 0usize;
            for letter in &r.0 {
                let res = self.residue(&letter.gen)?;
                let signed = if letter.exp == 1 { res } else { self.modulus - res };
                sum = (sum + signed) % self.modulus;
            }
            if sum != 0 {
                return Err(RsError::RelatorResidue { index, sum, modulus: self.modulus });
            }
        }
        Ok(())
    }
}

fn mod_inverse(a: usize, k: usize) -> Option<usize> {
    if k == 1 {
        return Some(0);
    }
    (1..k).find(|&x| (a * x) % k == 1)
}

/// Returns the index of the kernel after verifying that the transversal's
/// cosets are pairwise distinct under the residue map.
pub fn index_check(p: &Presentation, h: &CyclicHom) -> Result<usize, RsError> {
    h.validate(p)?;
    let rho = h.residue(&h.designated)?;
    let mut residues: Vec<usize> = (0..h.modulus).map(|j| (j * rho) % h.modulus).collect();
    residues.sort_unstable();
    residues.dedup();
    debug_assert_eq!(residues.len(), h.modulus, "unit residue forces distinct cosets");
    Ok(h.modulus)
}

/// Presentation of the kernel of `h`, via Schreier generators over the
/// transversal `{g^0, ..., g^{k-1}}` and Reidemeister rewriting of every
/// conjugated relator. Schreier generators are named `"x@j"` (ambient name
/// plus coset index), with the freely trivial ones discarded. Relators come
/// relator-major: ambient relator order, then coset 0..k-1.
pub fn subgroup_presentation(
    p: &Presentation,
    h: &CyclicHom,
) -> Result<(Presentation, usize), RsError> {
    h.validate(p)?;
    let k = h.modulus;
    let rho = h.residue(&h.designated)?;
    let rho_inv = mod_inverse(rho, k).expect("validated unit");

    // step(j, x, exp): Schreier generator used and next coset index
    let is_trivial = |j: usize, x: &str| x == h.designated && j != k - 1;
    let gen_name = |j: usize, x: &str| format!("{x}@{j}");

    let mut generators = Vec::new();
    for x in &p.generators {
        for j in 0..k {
            if !is_trivial(j, x) {
                generators.push(gen_name(j, x));
            }
        }
    }

    let mut relators = Vec::new();
    for r in &p.relators {
        for start in 0..k {
            let mut coset = start;
            let mut letters: Vec<Letter> = Vec::new();
            for letter in &r.0 {
                let shift = (rho_inv * self_residue(h, &letter.gen)?) % k;
                if letter.exp == 1 {
                    if !is_trivial(coset, &letter.gen) {
                        letters.push(Letter::new(gen_name(coset, &letter.gen), 1));
                    }
                    coset = (coset + shift) % k;
                } else {
                    let from = (coset + k - shift) % k;
                    if !is_trivial(from, &letter.gen) {
                        letters.push(Letter::new(gen_name(from, &letter.gen), -1));
                    }
                    coset = from;
                }
            }
            debug_assert_eq!(coset, start, "relator residue sum is zero");
            relators.push(free_reduce(&Word(letters)));
        }
    }
    Ok((Presentation::new(generators, relators), k))
}

fn self_residue(h: &CyclicHom, gen: &str) -> Result<usize, RsError> {
    h.images
        .get(gen)
        .map(|r| r % h.modulus)
        .ok_or_else(|| RsError::MissingImage(gen.to_string()))
}
