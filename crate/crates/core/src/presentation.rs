//! Quadratic and inhomogeneous-quadratic presentations `T(V)/(r − c)`.
//!
//! Relations live in `V⊗V` with coordinates `(i, j) ↦ i·n + j` for the word
//! `x_i x_j`, plus an optional constant term. Each presentation keeps the
//! user-facing relation list for display and a canonical row-echelon form of
//! the augmented relation rows for equality.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{annihilator, Matrix, Scalar, Subspace};

/// One relation `Σ c_ij x_i x_j − constant`; the algebra imposes `Σ c_ij x_i x_j = constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub quadratic: Vec<Scalar>,
    pub constant: Scalar,
}

impl Relation {
    pub fn homogeneous(quadratic: Vec<Scalar>) -> Self {
        Relation {
            quadratic,
            constant: Scalar::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PresentationKind {
    Homogeneous,
    Inhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPresentation {
    generators: Vec<String>,
    display: Vec<Relation>,
    /// rref of the augmented rows `[quadratic | constant]`
    canonical: Subspace,
}

impl QuadraticPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<Relation>) -> Result<Self> {
        let n = generators.len();
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{g}`")));
            }
        }
        for r in &relations {
            if r.quadratic.len() != n * n {
                return Err(Error::InvalidPresentation(format!(
                    "relation vector has length {}, expected {}",
                    r.quadratic.len(),
                    n * n
                )));
            }
        }
        let augmented = Matrix::from_rows(
            n * n + 1,
            relations
                .iter()
                .map(|r| {
                    let mut row = r.quadratic.clone();
                    row.push(r.constant.clone());
                    row
                })
                .collect(),
        );
        let canonical = Subspace::from_matrix(&augmented);
        if canonical.pivots().contains(&(n * n)) {
            return Err(Error::InvalidPresentation(
                "relations force a nonzero scalar to vanish".into(),
            ));
        }
        let display = relations
            .into_iter()
            .filter(|r| r.quadratic.iter().any(|c| !c.is_zero()))
            .collect();
        Ok(QuadraticPresentation {
            generators,
            display,
            canonical,
        })
    }

    pub fn homogeneous(generators: Vec<String>, relations: Vec<Vec<Scalar>>) -> Result<Self> {
        QuadraticPresentation::new(generators, relations.into_iter().map(Relation::homogeneous).collect())
    }

    /// Polynomial ring on the given generators (all commutators).
    pub fn polynomial(names: &[&str]) -> Self {
        let n = names.len();
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![Scalar::zero(); n * n];
                v[i * n + j] = Scalar::one();
                v[j * n + i] = -Scalar::one();
                rels.push(v);
            }
        }
        QuadraticPresentation::homogeneous(names.iter().map(|s| s.to_string()).collect(), rels)
            .expect("polynomial presentation is valid")
    }

    /// `ℚ(i)_{q}[x_1..x_n]` with `x_j x_i = q x_i x_j` for `i < j`.
    pub fn skew_polynomial(names: &[&str], q: &Scalar) -> Self {
        let n = names.len();
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![Scalar::zero(); n * n];
                v[j * n + i] = Scalar::one();
                v[i * n + j] = -q;
                rels.push(v);
            }
        }
        QuadraticPresentation::homogeneous(names.iter().map(|s| s.to_string()).collect(), rels)
            .expect("skew polynomial presentation is valid")
    }

    /// The trivial algebra (no generators).
    pub fn ground_field() -> Self {
        QuadraticPresentation::new(Vec::new(), Vec::new()).unwrap()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn kind(&self) -> PresentationKind {
        let n2 = self.num_generators().pow(2);
        let homogeneous = self
            .canonical
            .basis_vectors()
            .iter()
            .all(|row| row[n2].is_zero());
        if homogeneous {
            PresentationKind::Homogeneous
        } else {
            PresentationKind::Inhomogeneous
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.kind() == PresentationKind::Homogeneous
    }

    /// The relations as given (zero rows dropped).
    pub fn display_relations(&self) -> &[Relation] {
        &self.display
    }

    /// Canonical relations: independent, row-reduced, in the augmented coordinates.
    pub fn relations(&self) -> Vec<Relation> {
        let n2 = self.num_generators().pow(2);
        self.canonical
            .basis_vectors()
            .into_iter()
            .map(|mut row| {
                let constant = row.pop().unwrap();
                debug_assert_eq!(row.len(), n2);
                Relation {
                    quadratic: row,
                    constant,
                }
            })
            .collect()
    }

    pub fn num_relations(&self) -> usize {
        self.canonical.dim()
    }

    /// Homogeneous parts `R ⊆ V⊗V`.
    pub fn relation_space(&self) -> Subspace {
        let n2 = self.num_generators().pow(2);
        Subspace::span(n2, self.relations().into_iter().map(|r| r.quadratic).collect())
    }

    /// Equality of canonical relation spaces (generator names ignored).
    pub fn same_relations(&self, other: &QuadraticPresentation) -> bool {
        self.canonical == other.canonical
    }

    /// `A^! = T(V*)/(R^⊥)`.
    pub fn quadratic_dual(&self) -> Result<QuadraticPresentation> {
        if !self.is_homogeneous() {
            return Err(Error::InhomogeneousInput);
        }
        let dual = annihilator(&self.relation_space());
        QuadraticPresentation::homogeneous(
            self.generators.iter().map(|g| dual_name(g)).collect(),
            dual.basis_vectors(),
        )
    }

    /// `A ⊗ B`: generators `V ⊔ U`, relations `R_A ⊕ [V, U] ⊕ R_B`.
    pub fn tensor(a: &QuadraticPresentation, b: &QuadraticPresentation) -> Result<QuadraticPresentation> {
        if !a.is_homogeneous() || !b.is_homogeneous() {
            return Err(Error::InhomogeneousInput);
        }
        Ok(glue(a, b, -Scalar::one()))
    }

    /// `E ⊗̂ F` for ℤ₂-graded presentations with all generators odd:
    /// relations of both factors plus the anticommutators `xy + yx`.
    pub fn twisted_tensor(e: &QuadraticPresentation, f: &QuadraticPresentation) -> QuadraticPresentation {
        glue(e, f, Scalar::one())
    }

    /// `T(X)/(r − θ(r))` for `r` ranging over the given relation basis.
    pub fn deform(&self, basis: &[Vec<Scalar>], values: &[Scalar]) -> Result<QuadraticPresentation> {
        assert_eq!(basis.len(), values.len());
        QuadraticPresentation::new(
            self.generators.clone(),
            basis
                .iter()
                .zip(values)
                .map(|(r, c)| Relation {
                    quadratic: r.clone(),
                    constant: c.clone(),
                })
                .collect(),
        )
    }

    /// Same presentation with all constants dropped (the associated graded).
    pub fn homogenized(&self) -> QuadraticPresentation {
        QuadraticPresentation::homogeneous(
            self.generators.clone(),
            self.relations().into_iter().map(|r| r.quadratic).collect(),
        )
        .expect("dropping constants keeps relations independent")
    }

    /// Adds extra homogeneous relations (e.g. `A/(f)` from `A`).
    pub fn with_relations(&self, extra: Vec<Vec<Scalar>>) -> Result<QuadraticPresentation> {
        let mut rels = self.relations();
        rels.extend(extra.into_iter().map(Relation::homogeneous));
        QuadraticPresentation::new(self.generators.clone(), rels)
    }

    /// Linear substitution `x_a = Σ_c g[a][c] y_c`, generator names kept.
    pub fn change_of_basis(&self, g: &Matrix) -> Result<QuadraticPresentation> {
        let rels = self
            .relations()
            .into_iter()
            .map(|r| Relation {
                quadratic: transform_quadratic(&r.quadratic, g),
                constant: r.constant,
            })
            .collect();
        QuadraticPresentation::new(self.generators.clone(), rels)
    }

    pub fn rename_generators(&self, names: Vec<String>) -> Result<QuadraticPresentation> {
        assert_eq!(names.len(), self.num_generators());
        QuadraticPresentation::new(names, self.display.clone())
    }

    pub fn format_quadratic(&self, v: &[Scalar]) -> String {
        format_quadratic(&self.generators, v)
    }
}

/// Dual generator name: `x ↦ x'`, `x' ↦ x`.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{name}'"),
    }
}

/// Vector `Σ v_ab x_a x_b` rewritten under `x_a = Σ_c g[a][c] y_c`.
pub fn transform_quadratic(v: &[Scalar], g: &Matrix) -> Vec<Scalar> {
    let n = g.rows();
    let mut out = vec![Scalar::zero(); n * n];
    for a in 0..n {
        for b in 0..n {
            let coef = &v[a * n + b];
            if coef.is_zero() {
                continue;
            }
            for c in 0..n {
                if g[(a, c)].is_zero() {
                    continue;
                }
                let ac = coef * &g[(a, c)];
                for d in 0..n {
                    if !g[(b, d)].is_zero() {
                        out[c * n + d] += &(&ac * &g[(b, d)]);
                    }
                }
            }
        }
    }
    out
}

/// Embeds `V⊗V` into `(V⊕U)⊗(V⊕U)` with `V` occupying indices `offset..offset+n`.
pub fn embed_quadratic(v: &[Scalar], n: usize, offset: usize, total: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); total * total];
    for i in 0..n {
        for j in 0..n {
            out[(i + offset) * total + (j + offset)] = v[i * n + j].clone();
        }
    }
    out
}

fn glue(a: &QuadraticPresentation, b: &QuadraticPresentation, sign: Scalar) -> QuadraticPresentation {
    let (n, m) = (a.num_generators(), b.num_generators());
    let total = n + m;
    let mut rels = Vec::new();
    for r in a.relations() {
        rels.push(Relation {
            quadratic: embed_quadratic(&r.quadratic, n, 0, total),
            constant: r.constant,
        });
    }
    for i in 0..n {
        for j in 0..m {
            let mut v = vec![Scalar::zero(); total * total];
            v[i * total + (n + j)] = Scalar::one();
            v[(n + j) * total + i] = sign.clone();
            rels.push(Relation::homogeneous(v));
        }
    }
    for r in b.relations() {
        rels.push(Relation {
            quadratic: embed_quadratic(&r.quadratic, m, n, total),
            constant: r.constant,
        });
    }
    QuadraticPresentation::new(merge_names(a.generators(), b.generators()), rels)
        .expect("glued relations stay independent")
}

/// Concatenates generator lists, suffixing collisions with `@L` / `@R`.
pub fn merge_names(left: &[String], right: &[String]) -> Vec<String> {
    let clash: HashSet<&String> = left.iter().filter(|g| right.contains(g)).collect();
    let mut out: Vec<String> = left
        .iter()
        .map(|g| if clash.contains(g) { format!("{g}@L") } else { g.clone() })
        .collect();
    out.extend(
        right
            .iter()
            .map(|g| if clash.contains(g) { format!("{g}@R") } else { g.clone() }),
    );
    out
}

pub fn format_quadratic(names: &[String], v: &[Scalar]) -> String {
    let n = names.len();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = &v[i * n + j];
            if c.is_zero() {
                continue;
            }
            let word = if i == j {
                format!("{}^2", names[i])
            } else {
                format!("{}*{}", names[i], names[j])
            };
            terms.push((c.clone(), word));
        }
    }
    format_terms(&terms)
}

/// `c₁·w₁ + c₂·w₂ …` with signs pulled out of real coefficients.
pub fn format_terms(terms: &[(Scalar, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, w)) in terms.iter().enumerate() {
        let (neg, body) = if c.is_real() && c.re() < &num_rational::BigRational::zero() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        let coef = if body.is_one() && !w.is_empty() {
            String::new()
        } else if body.is_real() || body.re().is_zero() {
            body.to_string()
        } else {
            format!("({body})")
        };
        let term = match (coef.is_empty(), w.is_empty()) {
            (true, _) => w.clone(),
            (false, true) => coef,
            (false, false) => format!("{coef}*{w}"),
        };
        if k == 0 {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    out
}

impl fmt::Display for QuadraticPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens {};", self.generators.join(" "))?;
        for r in self.relations() {
            let mut s = format_quadratic(&self.generators, &r.quadratic);
            if !r.constant.is_zero() {
                let neg = -&r.constant;
                s = format!("{s} + {}", format_terms(&[(neg, String::new())]))
                    .replace("+ -", "- ");
            }
            write!(f, " rel {s};")?;
        }
        Ok(())
    }
}

/// A degree-2 element `f` of a quadratic algebra, given by a lift `r₀ ∈ V⊗V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralElement {
    pub name: String,
    pub lift: Vec<Scalar>,
}

impl CentralElement {
    pub fn new(name: impl Into<String>, lift: Vec<Scalar>) -> Self {
        CentralElement {
            name: name.into(),
            lift,
        }
    }

    /// `Σ c_k x_k²`.
    pub fn diagonal(name: impl Into<String>, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut lift = vec![Scalar::zero(); n * n];
        for (k, c) in coeffs.iter().enumerate() {
            lift[k * n + k] = c.clone();
        }
        CentralElement::new(name, lift)
    }

    pub fn is_zero(&self) -> bool {
        self.lift.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> Scalar {
        Scalar::from(x)
    }

    #[test]
    fn dual_of_polynomial_ring_is_exterior() {
        let a = QuadraticPresentation::polynomial(&["x", "y"]);
        let d = a.quadratic_dual().unwrap();
        assert_eq!(d.generators(), ["x'", "y'"]);
        // u², v², uv + vu in coordinates uu, uv, vu, vv
        let expected = Subspace::span(
            4,
            vec![
                vec![s(1), s(0), s(0), s(0)],
                vec![s(0), s(0), s(0), s(1)],
                vec![s(0), s(1), s(1), s(0)],
            ],
        );
        assert_eq!(d.relation_space(), expected);
    }

    #[test]
    fn dual_of_free_algebra_has_all_relations() {
        let free = QuadraticPresentation::homogeneous(vec!["x".into(), "y".into()], vec![]).unwrap();
        assert_eq!(free.quadratic_dual().unwrap().num_relations(), 4);
    }

    #[test]
    fn double_dual_is_identity() {
        let a = QuadraticPresentation::skew_polynomial(&["x", "y", "z"], &s(-1));
        let dd = a.quadratic_dual().unwrap().quadratic_dual().unwrap();
        assert!(dd.same_relations(&a));
        assert_eq!(dd.generators(), a.generators());
    }

    #[test]
    fn tensor_of_polynomial_rings() {
        let x = QuadraticPresentation::polynomial(&["x"]);
        let y = QuadraticPresentation::polynomial(&["y"]);
        let t = QuadraticPresentation::tensor(&x, &y).unwrap();
        assert!(t.same_relations(&QuadraticPresentation::polynomial(&["x", "y"])));
    }

    #[test]
    fn tensor_relation_count() {
        let a = QuadraticPresentation::polynomial(&["x", "y", "z"]);
        let b = QuadraticPresentation::polynomial(&["w"]);
        assert_eq!(QuadraticPresentation::tensor(&a, &b).unwrap().num_relations(), 6);
    }

    #[test]
    fn name_collisions_are_suffixed() {
        let x = QuadraticPresentation::polynomial(&["x"]);
        let t = QuadraticPresentation::tensor(&x, &x).unwrap();
        assert_eq!(t.generators(), ["x@L", "x@R"]);
    }

    #[test]
    fn twisted_tensor_of_group_algebras() {
        // ⟨σ⟩/(σ² − 1)
        let cg = QuadraticPresentation::new(
            vec!["s".into()],
            vec![Relation {
                quadratic: vec![s(1)],
                constant: s(1),
            }],
        )
        .unwrap();
        let t = QuadraticPresentation::twisted_tensor(&cg, &cg);
        assert_eq!(t.num_relations(), 3);
        assert_eq!(t.kind(), PresentationKind::Inhomogeneous);
        let unit = QuadraticPresentation::twisted_tensor(&cg, &QuadraticPresentation::ground_field());
        assert!(unit.same_relations(&cg));
    }

    #[test]
    fn dual_of_tensor_is_twisted_tensor_of_duals() {
        let a = QuadraticPresentation::polynomial(&["x", "y"]);
        let b = QuadraticPresentation::skew_polynomial(&["z"], &s(-1));
        let lhs = QuadraticPresentation::tensor(&a, &b).unwrap().quadratic_dual().unwrap();
        let rhs = QuadraticPresentation::twisted_tensor(
            &a.quadratic_dual().unwrap(),
            &b.quadratic_dual().unwrap(),
        );
        assert!(lhs.same_relations(&rhs));
    }

    #[test]
    fn inconsistent_constants_rejected() {
        let r1 = Relation {
            quadratic: vec![s(1)],
            constant: s(1),
        };
        let r2 = Relation {
            quadratic: vec![s(1)],
            constant: s(2),
        };
        assert!(QuadraticPresentation::new(vec!["x".into()], vec![r1, r2]).is_err());
    }

    #[test]
    fn display_form() {
        let a = QuadraticPresentation::polynomial(&["x", "y"]);
        assert_eq!(a.to_string(), "gens x y; rel x*y - y*x;");
    }
}
