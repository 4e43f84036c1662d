use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Scalar;

/// Dense univariate polynomial, coefficients low-to-high. The zero polynomial
/// has no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Scalar::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `t − root`
    pub fn linear(root: &Scalar) -> Self {
        Poly::new(vec![-root, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Scalar::from(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = &rem[k] * &inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    rem[k - dd + j] -= &(&c * b);
                }
                quot[k - dd] = c;
            }
            rem.pop();
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g`, `g` monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (Poly::zero(), s0, t0),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation in an arbitrary unital algebra given by `mul`.
    pub fn eval_in<F>(&self, unit: &[Scalar], a: &[Scalar], mul: F) -> Vec<Scalar>
    where
        F: Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    {
        let mut acc = vec![Scalar::zero(); unit.len()];
        for c in self.coeffs.iter().rev() {
            acc = mul(&acc, a);
            for (x, u) in acc.iter_mut().zip(unit) {
                if !u.is_zero() {
                    *x += &(c * u);
                }
            }
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let cs = c.to_string();
            let needs_paren = !c.is_real() && !c.re().is_zero();
            let (sign, body) = match cs.strip_prefix('-') {
                Some(rest) if !needs_paren => ("-", rest.to_string()),
                _ => ("+", if needs_paren { format!("({cs})") } else { cs.clone() }),
            };
            let term = if k == 0 {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}{mono}")
            };
            if first {
                write!(f, "{}{term}", if sign == "-" { "-" } else { "" })?;
            } else {
                write!(f, " {sign} {term}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Result of [`factor_small`]: monic factors with multiplicities and an unfactored remainder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallFactorization {
    pub factors: Vec<(Poly, usize)>,
    pub remainder: Poly,
}

impl SmallFactorization {
    pub fn product(&self) -> Poly {
        self.factors
            .iter()
            .fold(self.remainder.clone(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    /// Roots with multiplicity, when the polynomial split into linear factors.
    pub fn roots(&self) -> Vec<(Scalar, usize)> {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, m)| (-&f.coeffs()[0], *m))
            .collect()
    }

    pub fn splits(&self) -> bool {
        self.remainder.degree() == Some(0) && self.factors.iter().all(|(f, _)| f.degree() == Some(1))
    }
}

/// Norm bound above which divisor enumeration gives way to numeric root isolation.
const MAX_NORM: u128 = 1 << 16;
/// Cap on `|divisors(a_0)|·|divisors(a_n)|` for the exact candidate list.
const MAX_PAIRS: usize = 1 << 14;

/// Extracts monic linear factors over ℚ(i) and every square-free part of degree 2
/// that has no root in ℚ(i). Roots come from Gaussian divisors when the end
/// coefficients are small, otherwise from numerically isolated roots that are
/// rationalized and checked exactly; the latter can miss roots of large height,
/// which then stay in the remainder.
pub fn factor_small(p: &Poly) -> SmallFactorization {
    assert!(!p.is_zero(), "factor_small of the zero polynomial");
    let lead = p.leading().unwrap().clone();
    let mut rest = p.monic();
    let mut linear: Vec<(Scalar, usize)> = Vec::new();

    // zero roots first
    let zero_mult = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        rest = Poly::new(rest.coeffs[zero_mult..].to_vec());
        linear.push((Scalar::zero(), zero_mult));
    }

    if rest.degree().unwrap_or(0) > 0 {
        for root in candidate_roots(&rest) {
            let mut mult = 0;
            while rest.degree().unwrap_or(0) > 0 && rest.eval(&root).is_zero() {
                rest = rest.div_rem(&Poly::linear(&root)).0;
                mult += 1;
            }
            if mult > 0 {
                linear.push((root, mult));
            }
            if rest.degree() == Some(0) {
                break;
            }
        }
    }

    let mut factors: Vec<(Poly, usize)> = linear
        .into_iter()
        .map(|(r, m)| (Poly::linear(&r), m))
        .collect();

    let mut remainder = Poly::one();
    for (part, mult) in square_free_decomposition(&rest) {
        if part.degree() == Some(2) {
            match quadratic_roots(&part) {
                Some([r1, r2]) => {
                    factors.push((Poly::linear(&r1), mult));
                    factors.push((Poly::linear(&r2), mult));
                }
                None => factors.push((part, mult)),
            }
        } else if part.degree().unwrap_or(0) > 0 {
            remainder = remainder.mul(&part.pow(mult));
        }
    }
    factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
    SmallFactorization {
        factors,
        remainder: remainder.scale(&lead),
    }
}

/// Yun's algorithm: `p = Π a_k^k` with `a_k` square-free and pairwise coprime.
pub fn square_free_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let mut a = p.gcd(&dp);
    let mut b = p.div_rem(&a).0;
    let mut c = dp.div_rem(&a).0;
    let mut d = c.sub(&b.derivative());
    let mut k = 1;
    while b.degree().unwrap_or(0) > 0 {
        a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), k));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        k += 1;
    }
    out
}

/// Both roots of a monic square-free quadratic, if they lie in ℚ(i).
fn quadratic_roots(q: &Poly) -> Option<[Scalar; 2]> {
    let c = q.coeffs();
    let (b, c0) = (&c[1], &c[0]);
    let disc = &(b * b) - &(&Scalar::from(4) * c0);
    let root = disc.sqrt()?;
    let half = Scalar::ratio(1, 2);
    Some([&(&-b + &root) * &half, &(&-b - &root) * &half])
}

/// Candidate roots `d / e` with `d | a_0`, `e | a_n` in ℤ[i] after clearing denominators.
fn candidate_roots(p: &Poly) -> Vec<Scalar> {
    let denom = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let ints: Vec<(BigInt, BigInt)> = p
        .coeffs
        .iter()
        .map(|c| (c * &Scalar::from(num_rational::BigRational::from_integer(denom.clone())))
            .as_gaussian_integer()
            .unwrap())
        .collect();
    let a0 = &ints[0];
    let an = ints.last().unwrap();
    let (Some(num_divs), Some(den_divs)) = (gaussian_divisors(a0), gaussian_divisors(an)) else {
        return numeric_roots(p);
    };
    if num_divs.len() * den_divs.len() > MAX_PAIRS {
        return numeric_roots(p);
    }
    let mut out: Vec<Scalar> = Vec::new();
    for d in &num_divs {
        for e in &den_divs {
            let r = gi(d) / gi(e);
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort_by_key(|r| (r.height(), r.to_string()));
    out
}

/// Durand–Kerner on the square-free part, then best rational approximations of each
/// coordinate. Every returned value is an exact root.
fn numeric_roots(p: &Poly) -> Vec<Scalar> {
    let sf = p.div_rem(&p.gcd(&p.derivative())).0.monic();
    let n = sf.degree().unwrap_or(0);
    let coeffs: Option<Vec<(f64, f64)>> = sf
        .coeffs
        .iter()
        .map(|c| Some((c.re().to_f64()?, c.im().to_f64()?)))
        .collect();
    let Some(coeffs) = coeffs.filter(|cs| cs.iter().all(|(a, b)| a.is_finite() && b.is_finite())) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for z in durand_kerner(&coeffs, n) {
        for re in convergents(z.0) {
            for im in convergents(z.1) {
                let r = Scalar::new(re.clone(), im.clone());
                if !out.contains(&r) && sf.eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: C64, b: C64) -> C64 {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}

fn durand_kerner(monic: &[C64], n: usize) -> Vec<C64> {
    let radius = 1.0 + monic[..n].iter().map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 0.4 + std::f64::consts::TAU * k as f64 / n as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect();
    let eval = |x: C64| monic.iter().rev().fold((0.0, 0.0), |acc, c| {
        let m = cmul(acc, x);
        (m.0 + c.0, m.1 + c.1)
    });
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = cmul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = cdiv(eval(z[i]), den);
            if step.0.is_finite() && step.1.is_finite() {
                z[i] = (z[i].0 - step.0, z[i].1 - step.1);
                moved = moved.max(step.0.hypot(step.1) / (1.0 + z[i].0.hypot(z[i].1)));
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Continued-fraction convergents of `x` with denominators up to `10^6` that agree
/// with `x` to about eight digits, smallest denominator first.
fn convergents(x: f64) -> Vec<num_rational::BigRational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..40 {
        if !r.is_finite() || r.abs() > 1e15 {
            break;
        }
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(1_000_000) {
            break;
        }
        let q = num_rational::BigRational::new(h2.clone(), k2.clone());
        if (q.to_f64().unwrap_or(f64::NAN) - x).abs() <= 1e-8 * (1.0 + x.abs()) {
            out.push(q);
            if out.len() == 2 {
                break;
            }
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

fn gi((a, b): &(BigInt, BigInt)) -> Scalar {
    Scalar::new(
        num_rational::BigRational::from_integer(a.clone()),
        num_rational::BigRational::from_integer(b.clone()),
    )
}

/// All Gaussian integers dividing `c` (every associate), or `None` if the norm is too large.
fn gaussian_divisors((a, b): &(BigInt, BigInt)) -> Option<Vec<(BigInt, BigInt)>> {
    let norm = (a * a + b * b).to_u128()?;
    if norm == 0 || norm > MAX_NORM {
        return None;
    }
    let mut out = Vec::new();
    let mut m = 1u128;
    while m * m <= norm {
        if norm % m == 0 {
            for dn in [m, norm / m] {
                push_divisors_of_norm(dn, a, b, &mut out);
            }
        }
        m += 1;
    }
    out.sort();
    out.dedup();
    Some(out)
}

fn push_divisors_of_norm(n: u128, a: &BigInt, b: &BigInt, out: &mut Vec<(BigInt, BigInt)>) {
    let mut x = 0u128;
    while x * x <= n {
        let y2 = n - x * x;
        let y = isqrt(y2);
        if y * y == y2 {
            for (sx, sy) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                let gx = BigInt::from(x) * sx;
                let gy = BigInt::from(y) * sy;
                // (a+bi)/(gx+gy i) = (a+bi)(gx−gy i)/n
                let nb = BigInt::from(n);
                let re = a * &gx + b * &gy;
                let im = b * &gx - a * &gy;
                if (&re % &nb).is_zero() && (&im % &nb).is_zero() {
                    out.push((gx.clone(), gy.clone()));
                }
            }
        }
        x += 1;
    }
}

fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Monic minimal polynomial of `a` in a finite-dimensional unital algebra,
/// from the first linear dependence in the Krylov sequence `1, a, a², …`.
pub fn minimal_polynomial<F>(unit: &[Scalar], a: &[Scalar], mul: F) -> Poly
where
    F: Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
{
    let dim = unit.len();
    // echelon rows: (vector, pivot, combination over powers)
    let mut rows: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
    let mut power = unit.to_vec();
    for k in 0..=dim {
        let mut v = power.clone();
        let mut comb = vec![Scalar::zero(); k + 1];
        comb[k] = Scalar::one();
        for (row, pivot, rc) in &rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Poly::new(comb),
            Some(pivot) => {
                let inv = v[pivot].inv().unwrap();
                v.iter_mut().for_each(|x| *x *= &inv);
                comb.iter_mut().for_each(|x| *x *= &inv);
                rows.push((v, pivot, comb));
            }
        }
        power = mul(&power, a);
    }
    unreachable!("Krylov sequence longer than the dimension")
}
