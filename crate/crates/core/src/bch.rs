//! Primitive narrow-sense BCH codes `C(q, q^m - 1, δ, 1)`.
//!
//! The zeros of the code are `α, α², …, α^{δ-1}` for the primitive element
//! `α` of the field context, closed under `i ↦ qi (mod n)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{gcd, Elem, FieldCtx};
use crate::goppa::GoppaSpec;
use crate::linalg::{LinearCode, Matrix, Provenance, GENERATOR_CAP};
use crate::poly::Poly;

/// Orbits of `i ↦ qi (mod n)` on `0..n`, each listed from its smallest
/// member in orbit order; orbits are sorted by that member.
pub fn cyclotomic_cosets(q: u64, n: u64) -> Result<Vec<Vec<u64>>> {
    if n == 0 || gcd(q, n) != 1 {
        return Err(Error::InvalidArgument(format!("gcd({q}, {n}) must be 1")));
    }
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for i in 0..n {
        if seen[i as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut j = i;
        while !seen[j as usize] {
            seen[j as usize] = true;
            coset.push(j);
            j = j * q % n;
        }
        cosets.push(coset);
    }
    Ok(cosets)
}

#[derive(Clone, Debug)]
pub struct BchSpec {
    field: Arc<FieldCtx>,
    delta: usize,
    defining_set: BTreeSet<usize>,
}

impl BchSpec {
    pub fn new(field: Arc<FieldCtx>, delta: usize) -> Result<Self> {
        let n = field.size() as usize - 1;
        if delta < 2 || delta > n {
            return Err(Error::OutOfRange(format!("designed distance {delta} outside 2..={n}")));
        }
        let mut defining_set = BTreeSet::new();
        for coset in cyclotomic_cosets(field.q() as u64, n as u64)? {
            if coset.iter().any(|&i| (1..delta as u64).contains(&i)) {
                defining_set.extend(coset.iter().map(|&i| i as usize));
            }
        }
        Ok(BchSpec { field, delta, defining_set })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.field.size() as usize - 1
    }
    pub fn delta(&self) -> usize {
        self.delta
    }
    pub fn defining_set(&self) -> &BTreeSet<usize> {
        &self.defining_set
    }
    pub fn dimension(&self) -> usize {
        self.n() - self.defining_set.len()
    }

    /// `Π_{i ∈ D} (x - α^i)`, checked to have coefficients in `F_q`.
    pub fn generator_poly(&self) -> Result<Poly> {
        let f = &*self.field;
        let roots: Vec<Elem> = self.defining_set.iter().map(|&i| f.prim_pow(i as i64)).collect();
        let g = Poly::from_roots(&roots, f);
        if let Some(i) = g.coeffs().iter().position(|&c| !f.is_in_base_field(c)) {
            return Err(Error::InvalidArgument(format!("generator coefficient {i} is not in F_q")));
        }
        Ok(g)
    }

    /// Largest `δ'` with `{1, …, δ'-1} ⊆ D`, scanning upward from `δ`.
    pub fn bose_distance(&self) -> usize {
        let mut d = self.delta;
        while d < self.n() && self.defining_set.contains(&d) {
            d += 1;
        }
        d
    }

    /// `(δ-1) × n` matrix `(α^{ij})` over `F_{q^m}`, `j = 1..δ-1`, `i = 0..n-1`.
    pub fn parity_check_extension(&self) -> Matrix {
        let f = &*self.field;
        let n = self.n();
        let mut h = Matrix::zeros(self.delta - 1, n);
        for j in 1..self.delta {
            for i in 0..n {
                h.set(j - 1, i, f.prim_pow((i * j) as i64));
            }
        }
        h
    }

    /// Builds the code; the generator matrix holds the shifts `x^i g(x)` and is
    /// materialized only for moderate `k·n`.
    pub fn build(&self) -> Result<LinearCode> {
        let f = &*self.field;
        let n = self.n();
        let k = self.dimension();
        let generator = if k * n <= GENERATOR_CAP {
            let g = self.generator_poly()?;
            let mut m = Matrix::zeros(k, n);
            for r in 0..k {
                for (i, &c) in g.coeffs().iter().enumerate() {
                    m.set(r, r + i, c);
                }
            }
            Some(m)
        } else {
            None
        };
        let h = self.parity_check_extension().subfield_expand(f);
        let code = LinearCode::with_generator(
            self.field.clone(),
            &h,
            generator,
            self.delta,
            Provenance::Bch { delta: self.delta },
        );
        if code.k() != k {
            return Err(Error::InvalidArgument(format!(
                "parity rank gives k = {}, cyclotomic cosets give k = {k}",
                code.k()
            )));
        }
        Ok(code)
    }

    /// `c(α^j) = 0` for `j = 1..δ-1`, with `c` over `F_q`.
    pub fn is_codeword(&self, c: &[Elem]) -> bool {
        let f = &*self.field;
        if c.len() != self.n() || c.iter().any(|&x| !f.is_in_base_field(x)) {
            return false;
        }
        let word = Poly::new(c.to_vec());
        (1..self.delta).all(|j| word.eval(f.prim_pow(j as i64), f).is_zero())
    }
}

/// `k = n - m⌈(δ-1)(1 - 1/q)⌉`, valid for `q^{⌈m/2⌉} < n ≤ q^m - 1` and
/// `2 ≤ δ ≤ min(⌊n q^{⌈m/2⌉} / (q^m - 1)⌋, n)`.
pub fn dim_formula_general(q: u64, m: u32, n: u64, delta: u64) -> Result<u64> {
    let qm = q.checked_pow(m).ok_or_else(|| Error::OutOfRange("q^m overflows".into()))?;
    let half = q.pow(m.div_ceil(2));
    if !(half < n && n < qm) {
        return Err(Error::OutOfRange(format!("length {n} outside ({half}, {}]", qm - 1)));
    }
    let cap = (n * half / (qm - 1)).min(n);
    if !(2..=cap).contains(&delta) {
        return Err(Error::OutOfRange(format!("designed distance {delta} outside 2..={cap}")));
    }
    let ceil = ((delta - 1) * (q - 1)).div_ceil(q);
    Ok(n - m as u64 * ceil)
}

/// `k = (q - r)^m - 1` for `C(q, q^m - 1, r(q^m-1)/(q-1) + 1, 1)`, `1 ≤ r < q-1`, `r | q-1`.
pub fn dim_formula_norm(q: u64, m: u32, r: u64) -> Result<u64> {
    if !(r >= 1 && r + 1 < q && (q - 1) % r == 0) {
        return Err(Error::OutOfRange(format!("need 1 ≤ r < q-1 and r | q-1, got q = {q}, r = {r}")));
    }
    Ok((q - r).pow(m) - 1)
}

/// Coordinate `i` of a Goppa word (support `α^i`) goes to coordinate `-i mod n`.
pub fn goppa_bch_indices(indices: &[usize], n: usize) -> Vec<usize> {
    indices.iter().map(|&i| (n - i % n) % n).collect()
}

/// Permutes a word of `Γ_q(L, x^t)`, `L = (1, α, …, α^{n-1})`, into the
/// corresponding word of `C(q, n, t+1, 1)`.
pub fn goppa_bch_map(spec: &GoppaSpec, word: &[Elem]) -> Result<Vec<Elem>> {
    let f = &**spec.field();
    let n = f.size() as usize - 1;
    let t = spec.degree();
    if *spec.goppa_poly() != Poly::monomial(Elem::ONE, t) {
        return Err(Error::InvalidArgument("Goppa polynomial is not x^t".into()));
    }
    let canonical = spec.n() == n && spec.support().iter().enumerate().all(|(i, &a)| a == f.prim_pow(i as i64));
    if !canonical {
        return Err(Error::InvalidArgument("support is not 1, α, …, α^(n-1)".into()));
    }
    if word.len() != n {
        return Err(Error::InvalidArgument(format!("word has length {}, expected {n}", word.len())));
    }
    let mut out = vec![Elem::ZERO; n];
    for (i, &c) in word.iter().enumerate() {
        out[(n - i) % n] = c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, s: u32, m: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, s, m, None).unwrap())
    }

    #[test]
    fn cosets_mod_seven() {
        let c = cyclotomic_cosets(2, 7).unwrap();
        assert_eq!(c, vec![vec![0], vec![1, 2, 4], vec![3, 6, 5]]);
        assert!(cyclotomic_cosets(3, 6).is_err());
        for c in cyclotomic_cosets(3, 80).unwrap() {
            assert_eq!(4 % c.len(), 0);
        }
    }

    #[test]
    fn small_dimensions() {
        let spec = BchSpec::new(field(3, 1, 2), 5).unwrap();
        assert_eq!(spec.dimension(), 3);
        let spec = BchSpec::new(field(3, 1, 3), 8).unwrap();
        assert_eq!(spec.dimension(), 11);
        let spec = BchSpec::new(field(2, 2, 3), 5).unwrap();
        assert_eq!(spec.dimension(), 54);
    }

    #[test]
    fn generator_divides_xn_minus_one() {
        let spec = BchSpec::new(field(3, 1, 3), 8).unwrap();
        let f = spec.field().clone();
        let g = spec.generator_poly().unwrap();
        assert_eq!(g.degree(), Some(26 - 11));
        let xn1 = Poly::monomial(Elem::ONE, 26).sub(&Poly::one(), &f);
        assert!(xn1.rem(&g, &f).unwrap().is_zero());
        for &i in spec.defining_set() {
            assert!(g.eval(f.prim_pow(i as i64), &f).is_zero());
        }
    }

    #[test]
    fn build_is_consistent() {
        let spec = BchSpec::new(field(3, 1, 2), 5).unwrap();
        let code = spec.build().unwrap();
        assert_eq!((code.n(), code.k()), (8, 3));
        assert!(code.check_invariants());
        for row in code.generator().unwrap().row_vecs() {
            assert!(spec.is_codeword(row));
        }
    }

    #[test]
    fn formulas() {
        assert_eq!(dim_formula_norm(5, 2, 2).unwrap(), 8);
        assert_eq!(dim_formula_general(3, 5, 242, 4).unwrap(), 232);
        assert_eq!(dim_formula_general(3, 3, 26, 8).unwrap(), 11);
        assert!(dim_formula_general(3, 2, 8, 5).is_err());
        assert!(dim_formula_norm(5, 2, 4).is_err());
        assert!(dim_formula_norm(5, 2, 3).is_err());
    }

    #[test]
    fn bose_scan() {
        let spec = BchSpec::new(field(3, 1, 4), 4).unwrap();
        let d = spec.bose_distance();
        assert_eq!(d, 4);
        let spec = BchSpec::new(field(2, 1, 4), 4).unwrap();
        assert_eq!(spec.bose_distance(), 5);
        let raised = BchSpec::new(spec.field().clone(), 5).unwrap();
        assert_eq!(raised.generator_poly().unwrap(), spec.generator_poly().unwrap());
    }

    #[test]
    fn index_map() {
        assert_eq!(goppa_bch_indices(&[111, 119, 121, 225], 242), vec![131, 123, 121, 17]);
        assert_eq!(goppa_bch_indices(&[0, 5], 8), vec![0, 3]);
        let once = goppa_bch_indices(&[3, 7, 0], 10);
        assert_eq!(goppa_bch_indices(&once, 10), vec![3, 7, 0]);
    }
}
