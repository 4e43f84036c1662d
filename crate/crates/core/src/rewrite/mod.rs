//! Degree-truncated noncommutative Gröbner bases (Bergman-style rewriting).
//!
//! Words are ordered degree-lexicographically with generators in presentation
//! order. A relation `r − c` becomes the rule `lead(r) → lead(r) − r/lc + c/lc`,
//! so constants may lower the degree of a rewrite by two. Completion resolves
//! every overlap ambiguity of degree at most the truncation bound; for a
//! filtered (Clifford-type) presentation an ambiguity whose resolution drops
//! below its own degree is reported as [`Error::FiltrationAnomaly`].

mod word;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use word::{NcPoly, Word};

use crate::error::{Error, Result};
use crate::exactlinalg::Scalar;
use crate::gradedalg::FdAlgebra;
use crate::presentation::{CentralElement, QuadraticPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    /// The lead word equals this lower-order combination in the quotient.
    pub tail: NcPoly,
}

impl Rule {
    fn as_poly(&self) -> NcPoly {
        let mut p = self.tail.scale(&-Scalar::one());
        p.add_term(self.lead.clone(), Scalar::one());
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// `dims[n]` = number of normal words of length `n`.
    pub dims: Vec<usize>,
    /// Some degree up to the bound has no normal words (finite-dimensional; dims exact).
    pub stabilized: bool,
    pub truncation: usize,
}

impl HilbertData {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Reduced rewriting system for `T(V)/(relations)`, confluent up to `truncation`.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    source: QuadraticPresentation,
    truncation: usize,
    rules: Vec<Rule>,
    index: HashMap<Vec<u8>, usize>,
    max_lead: usize,
    /// Overlaps above the truncation that were never checked.
    unchecked_overlaps: usize,
}

struct Completion {
    n: usize,
    truncation: usize,
    filtered: bool,
    /// rule id → rule, `None` once superseded
    rules: Vec<Option<Rule>>,
    index: HashMap<Vec<u8>, usize>,
    max_lead: usize,
    queue: BinaryHeap<Reverse<(usize, usize, usize, usize)>>,
    names: Vec<String>,
}

impl Completion {
    fn reduce(&self, p: &NcPoly) -> NcPoly {
        reduce_with(p, &self.index, self.max_lead, |id| self.rules[id].as_ref().unwrap())
    }

    /// Adds `p` (already reduced or not) as a new rule, interreducing existing rules.
    fn insert(&mut self, p: NcPoly, origin_degree: usize, origin: &str) -> Result<()> {
        let mut pending = vec![(p, origin_degree, origin.to_string())];
        while let Some((p, degree, origin)) = pending.pop() {
            let r = self.reduce(&p);
            if r.is_zero() {
                continue;
            }
            let (lead, lc) = r.leading().map(|(w, c)| (w.clone(), c.clone())).unwrap();
            if self.filtered && lead.len() < degree {
                return Err(Error::FiltrationAnomaly {
                    ambiguity: origin,
                    degree,
                });
            }
            if lead.is_empty() {
                // 1 = 0 in a homogeneous system cannot happen; in a filtered one it is
                // caught above, so only reachable with degree-0 input.
                return Err(Error::InvalidPresentation("relations generate the unit ideal".into()));
            }
            let inv = lc.inv().unwrap();
            let monic = r.scale(&inv);
            let mut tail = monic.scale(&-Scalar::one());
            tail.add_term(lead.clone(), Scalar::one());
            let rule = Rule {
                lead: lead.clone(),
                tail,
            };
            // supersede rules whose lead contains the new lead
            let superseded: Vec<usize> = self
                .index
                .iter()
                .filter(|(w, _)| contains_subword(w, &lead.0))
                .map(|(_, &id)| id)
                .collect();
            for id in superseded {
                let old = self.rules[id].take().unwrap();
                self.index.remove(&old.lead.0);
                let d = old.lead.len();
                pending.push((old.as_poly(), d, format!("re-reduction of {}", old.lead.render(&self.names))));
            }
            let id = self.rules.len();
            self.max_lead = self.max_lead.max(lead.len());
            self.index.insert(lead.0.clone(), id);
            self.rules.push(Some(rule));
            self.push_overlaps(id);
        }
        Ok(())
    }

    fn push_overlaps(&mut self, id: usize) {
        let live: Vec<usize> = self.index.values().copied().collect();
        for other in live {
            for (a, b) in [(id, other), (other, id)] {
                let la = &self.rules[a].as_ref().unwrap().lead;
                let lb = &self.rules[b].as_ref().unwrap().lead;
                for k in overlap_lengths(&la.0, &lb.0) {
                    let degree = la.len() + lb.len() - k;
                    if degree <= self.truncation {
                        self.queue.push(Reverse((degree, a, b, k)));
                    }
                }
                if a == b {
                    break;
                }
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        let mut seen = HashSet::new();
        while let Some(Reverse((degree, a, b, k))) = self.queue.pop() {
            if !seen.insert((a, b, k)) {
                continue;
            }
            let (Some(ra), Some(rb)) = (&self.rules[a], &self.rules[b]) else {
                continue;
            };
            let s = s_polynomial(ra, rb, k);
            let label = Word::concat(&[&ra.lead.0, &rb.lead.0[k..]]).render(&self.names);
            self.insert(s, degree, &label)?;
        }
        Ok(())
    }
}

/// `lead_a = u·s`, `lead_b = s·v` with `|s| = k`: returns `tail_a·v − u·tail_b`.
fn s_polynomial(a: &Rule, b: &Rule, k: usize) -> NcPoly {
    let u = &a.lead.0[..a.lead.len() - k];
    let v = &b.lead.0[k..];
    a.tail.sandwich(&[], v).sub(&b.tail.sandwich(u, &[]))
}

/// Proper overlap lengths `k` with suffix of `a` of length `k` equal to prefix of `b`.
fn overlap_lengths(a: &[u8], b: &[u8]) -> Vec<usize> {
    (1..a.len().min(b.len()))
        .filter(|&k| a[a.len() - k..] == b[..k])
        .collect()
}

fn contains_subword(w: &[u8], sub: &[u8]) -> bool {
    w.len() >= sub.len() && w.windows(sub.len()).any(|x| x == sub)
}

fn find_reducer(w: &[u8], index: &HashMap<Vec<u8>, usize>, max_lead: usize) -> Option<(usize, usize, usize)> {
    for start in 0..w.len() {
        for len in 1..=max_lead.min(w.len() - start) {
            if let Some(&id) = index.get(&w[start..start + len]) {
                return Some((start, len, id));
            }
        }
    }
    None
}

fn reduce_with<'a, F>(p: &NcPoly, index: &HashMap<Vec<u8>, usize>, max_lead: usize, rule: F) -> NcPoly
where
    F: Fn(usize) -> &'a Rule,
{
    let mut work = p.clone().into_terms();
    let mut out = std::collections::BTreeMap::new();
    while let Some((w, c)) = work.pop_last() {
        match find_reducer(&w.0, index, max_lead) {
            None => {
                out.insert(w, c);
            }
            Some((start, len, id)) => {
                let r = rule(id);
                let (u, v) = (&w.0[..start], &w.0[start + len..]);
                for (tw, tc) in r.tail.terms() {
                    let nw = Word::concat(&[u, &tw.0, v]);
                    let delta = &c * tc;
                    let e = work.entry(nw).or_insert_with(Scalar::zero);
                    *e += &delta;
                    if e.is_zero() {
                        let key = Word::concat(&[u, &tw.0, v]);
                        work.remove(&key);
                    }
                }
            }
        }
    }
    NcPoly::from_terms(out)
}

impl RewriteSystem {
    /// Completes the presentation up to ambiguities of degree `truncation` (≥ 3).
    pub fn complete(p: &QuadraticPresentation, truncation: usize) -> Result<RewriteSystem> {
        let truncation = truncation.max(3);
        let n = p.num_generators();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPresentation("too many generators".into()));
        }
        let mut c = Completion {
            n,
            truncation,
            filtered: !p.is_homogeneous(),
            rules: Vec::new(),
            index: HashMap::new(),
            max_lead: 0,
            queue: BinaryHeap::new(),
            names: p.generators().to_vec(),
        };
        for r in p.relations() {
            let mut poly = NcPoly::from_quadratic(&r.quadratic, c.n);
            poly.add_term(Word::empty(), -&r.constant);
            c.insert(poly, 2, "input relation")?;
        }
        c.run()?;

        let mut rules: Vec<Rule> = c.rules.into_iter().flatten().collect();
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        let mut rs = RewriteSystem {
            source: p.clone(),
            truncation,
            index: rules.iter().enumerate().map(|(k, r)| (r.lead.0.clone(), k)).collect(),
            max_lead: rules.iter().map(|r| r.lead.len()).max().unwrap_or(0),
            rules,
            unchecked_overlaps: 0,
        };
        // inter-reduce tails
        let tails: Vec<NcPoly> = rs.rules.iter().map(|r| rs.reduce(&r.tail)).collect();
        for (r, t) in rs.rules.iter_mut().zip(tails) {
            r.tail = t;
        }
        rs.audit()?;
        Ok(rs)
    }

    /// Re-checks every overlap up to the truncation degree; counts the ones above it.
    fn audit(&mut self) -> Result<()> {
        let mut unchecked = 0;
        for a in &self.rules {
            for b in &self.rules {
                for k in overlap_lengths(&a.lead.0, &b.lead.0) {
                    let degree = a.lead.len() + b.lead.len() - k;
                    if degree > self.truncation {
                        unchecked += 1;
                        continue;
                    }
                    if !self.reduce(&s_polynomial(a, b, k)).is_zero() {
                        let w = Word::concat(&[&a.lead.0, &b.lead.0[k..]]);
                        return Err(Error::ConfluenceAudit(w.render(self.source.generators())));
                    }
                }
            }
        }
        self.unchecked_overlaps = unchecked;
        Ok(())
    }

    pub fn source(&self) -> &QuadraticPresentation {
        &self.source
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn num_generators(&self) -> usize {
        self.source.num_generators()
    }

    /// Every overlap was resolved: the rules are confluent in all degrees.
    pub fn is_globally_confluent(&self) -> bool {
        self.unchecked_overlaps == 0
    }

    fn reduce(&self, p: &NcPoly) -> NcPoly {
        reduce_with(p, &self.index, self.max_lead, |id| &self.rules[id])
    }

    /// Unique normal form; zero iff `p` lies in the ideal (in the verified degrees).
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        let degree = p.degree().unwrap_or(0);
        if degree > self.truncation && !self.is_globally_confluent() {
            return Err(Error::DegreeExceedsTruncation {
                degree,
                bound: self.truncation,
            });
        }
        Ok(self.reduce(p))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        find_reducer(&w.0, &self.index, self.max_lead).is_none()
    }

    /// Normal words grouped by length, up to the truncation degree or the first empty degree.
    pub fn normal_words(&self) -> Vec<Vec<Word>> {
        let n = self.num_generators();
        let mut layers = vec![vec![Word::empty()]];
        for _ in 1..=self.truncation {
            let prev = layers.last().unwrap();
            let mut next = Vec::new();
            for w in prev {
                for g in 0..n {
                    let mut v = w.0.clone();
                    v.push(g as u8);
                    // prefix is normal, so only subwords ending at the new letter matter
                    let reducible = (1..=self.max_lead.min(v.len()))
                        .any(|len| self.index.contains_key(&v[v.len() - len..]));
                    if !reducible {
                        next.push(Word(v));
                    }
                }
            }
            let empty = next.is_empty();
            layers.push(next);
            if empty {
                break;
            }
        }
        layers
    }

    pub fn hilbert(&self) -> HilbertData {
        let layers = self.normal_words();
        let stabilized = layers.last().is_some_and(Vec::is_empty) && layers.len() > 1;
        let mut dims: Vec<usize> = layers.iter().map(Vec::len).collect();
        if stabilized {
            dims.pop();
            while dims.len() <= self.truncation {
                dims.push(0);
            }
        }
        HilbertData {
            dims,
            stabilized,
            truncation: self.truncation,
        }
    }

    pub fn central_poly(&self, f: &CentralElement) -> NcPoly {
        NcPoly::from_quadratic(&f.lift, self.num_generators())
    }

    /// `f·x − x·f` reduces to zero for every generator `x`.
    pub fn is_central(&self, f: &CentralElement) -> Result<bool> {
        Ok(self.non_commuting_generators(f)?.is_empty())
    }

    /// Generators `x` with `f·x − x·f ≠ 0`.
    pub fn non_commuting_generators(&self, f: &CentralElement) -> Result<Vec<String>> {
        let fp = self.central_poly(f);
        let mut bad = Vec::new();
        for g in 0..self.num_generators() {
            let x = NcPoly::generator(g);
            let comm = fp.mul(&x).sub(&x.mul(&fp));
            if !self.normal_form(&comm)?.is_zero() {
                bad.push(self.source.generators()[g].clone());
            }
        }
        Ok(bad)
    }

    /// Hilbert-series certificate: `dim (A/(f))_n = dim A_n − dim A_{n−2}` for all `n ≤ degree`.
    pub fn is_regular(&self, f: &CentralElement, degree: usize) -> Result<bool> {
        if f.is_zero() {
            return Ok(false);
        }
        let degree = degree.max(2);
        let base = if self.truncation >= degree && self.source.is_homogeneous() {
            self.hilbert()
        } else {
            RewriteSystem::complete(&self.source, degree)?.hilbert()
        };
        let quotient = self.source.with_relations(vec![f.lift.clone()])?;
        let q = RewriteSystem::complete(&quotient, degree)?.hilbert();
        Ok((0..=degree).all(|k| {
            let a = base.dims.get(k).copied().unwrap_or(0);
            let a2 = if k >= 2 { base.dims.get(k - 2).copied().unwrap_or(0) } else { 0 };
            q.dims.get(k).copied().unwrap_or(0) + a2 == a
        }))
    }

    /// Finite-dimensional quotient as a structure-constant table on normal words,
    /// ℤ₂-graded by word length. Associativity is verified on all basis triples.
    pub fn multiplication_table(&self) -> Result<FdAlgebra> {
        let hilbert = self.hilbert();
        if !hilbert.stabilized || !self.is_globally_confluent() {
            return Err(Error::NotFiniteDimensional(self.truncation));
        }
        let basis: Vec<Word> = self.normal_words().into_iter().flatten().collect();
        let position: HashMap<&Word, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let dim = basis.len();
        let mut table = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                let prod = self.reduce(&NcPoly::term(Word::concat(&[&a.0, &b.0]), Scalar::one()));
                let mut entry: Vec<(u32, Scalar)> = prod
                    .terms()
                    .iter()
                    .map(|(w, c)| (position[w] as u32, c.clone()))
                    .collect();
                entry.sort_by_key(|(k, _)| *k);
                table.push(entry);
            }
        }
        let names = self.source.generators();
        let labels = basis.iter().map(|w| w.render(names)).collect();
        let grading = basis.iter().map(Word::parity).collect();
        let mut unit = vec![Scalar::zero(); dim];
        unit[0] = Scalar::one();
        let alg = FdAlgebra::from_sparse(labels, table, unit, grading)?;
        alg.verify_associative()?;
        Ok(alg)
    }

    /// Normal words of the finite-dimensional quotient in basis order.
    pub fn basis_words(&self) -> Vec<Word> {
        self.normal_words().into_iter().flatten().collect()
    }
}

/// `RewriteSystem::complete` with the default truncation `2·n + 2`.
pub fn complete(p: &QuadraticPresentation, truncation: Option<usize>) -> Result<RewriteSystem> {
    let d = truncation.unwrap_or(2 * p.num_generators() + 2);
    RewriteSystem::complete(p, d)
}
