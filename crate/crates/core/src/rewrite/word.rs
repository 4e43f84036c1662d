use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactlinalg::Scalar;

/// A word in the free monoid on generators `0..n`, ordered degree-lexicographically
/// (length first, then lexicographic with generator `0` smallest).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g as u8])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(parts: &[&[u8]]) -> Word {
        let mut v = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            v.extend_from_slice(p);
        }
        Word(v)
    }

    pub fn parity(&self) -> u8 {
        (self.0.len() % 2) as u8
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&g| names[g as usize].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Element of the free algebra `ℚ(i)⟨x_0..x_{n-1}⟩`, terms sorted by word order.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::term(Word::empty(), Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        NcPoly::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn generator(g: usize) -> Self {
        NcPoly::term(Word::letter(g), Scalar::one())
    }

    /// `Σ v[i·n + j] x_i x_j`.
    pub fn from_quadratic(v: &[Scalar], n: usize) -> Self {
        let mut p = NcPoly::zero();
        for i in 0..n {
            for j in 0..n {
                let c = &v[i * n + j];
                if !c.is_zero() {
                    p.add_term(Word(vec![i as u8, j as u8]), c.clone());
                }
            }
        }
        p
    }

    /// `Σ v[k] x_k`.
    pub fn from_linear(v: &[Scalar]) -> Self {
        let mut p = NcPoly::zero();
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(Word::letter(k), c.clone());
            }
        }
        p
    }

    pub fn from_terms(terms: BTreeMap<Word, Scalar>) -> Self {
        NcPoly {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(Word::concat(&[&a.0, &b.0]), x * y);
            }
        }
        out
    }

    /// `u · self · v` for words `u`, `v`.
    pub fn sandwich(&self, u: &[u8], v: &[u8]) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::concat(&[u, &w.0, v]), c.clone()))
                .collect(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let terms: Vec<(Scalar, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                (
                    c.clone(),
                    if w.is_empty() { String::new() } else { w.render(names) },
                )
            })
            .collect();
        crate::presentation::format_terms(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order() {
        let a = Word(vec![1]);
        let b = Word(vec![0, 0]);
        let c = Word(vec![0, 1]);
        assert!(a < b && b < c);
        assert!(Word::empty() < a);
    }

    #[test]
    fn arithmetic_cancels() {
        let x = NcPoly::generator(0);
        let y = NcPoly::generator(1);
        let comm = x.mul(&y).sub(&y.mul(&x));
        assert_eq!(comm.leading().unwrap().0, &Word(vec![1, 0]));
        assert!(comm.sub(&comm).is_zero());
    }
}
