//! Goppa codes `Γ_q(L, G)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::linalg::{LinearCode, Matrix, Provenance};
use crate::poly::{norm_poly_expand, Poly, QuotientRing};

/// Defining data of a Goppa code: an ordered support and a Goppa polynomial.
#[derive(Clone, Debug)]
pub struct GoppaSpec {
    field: Arc<FieldCtx>,
    support: Vec<Elem>,
    g: Poly,
    designed_distance: usize,
    provenance: Provenance,
}

impl GoppaSpec {
    pub fn new(field: Arc<FieldCtx>, support: Vec<Elem>, g: Poly) -> Result<Self> {
        let t = match g.degree() {
            Some(t) if t >= 1 => t,
            _ => return Err(Error::InvalidArgument("Goppa polynomial must have degree at least 1".into())),
        };
        if support.is_empty() {
            return Err(Error::InvalidArgument("empty support".into()));
        }
        let mut seen = HashMap::with_capacity(support.len());
        for (i, &a) in support.iter().enumerate() {
            if a.0 >= field.size() {
                return Err(Error::InvalidArgument(format!("support entry {i} is not a field element")));
            }
            if seen.insert(a, i).is_some() {
                return Err(Error::InvalidArgument(format!("support entry {i} repeats an earlier one")));
            }
            if g.eval(a, &field).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "Goppa polynomial vanishes at support entry {i} ({})",
                    field.format_elem(a)
                )));
            }
        }
        Ok(GoppaSpec { field, support, g, designed_distance: t + 1, provenance: Provenance::Goppa { degree: t } })
    }

    /// `L = {α : G(α) ≠ 0}` in the canonical order of [`full_support`].
    pub fn with_full_support(field: Arc<FieldCtx>, g: Poly) -> Result<Self> {
        let support = full_support(&field, &g)?;
        GoppaSpec::new(field, support, g)
    }

    /// Attaches family knowledge that improves on the `t + 1` bound.
    pub fn with_designed_distance(mut self, d: usize, provenance: Provenance) -> Self {
        self.designed_distance = d;
        self.provenance = provenance;
        self
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn support(&self) -> &[Elem] {
        &self.support
    }
    pub fn goppa_poly(&self) -> &Poly {
        &self.g
    }
    pub fn degree(&self) -> usize {
        self.g.degree().unwrap_or(0)
    }
    pub fn n(&self) -> usize {
        self.support.len()
    }
    pub fn designed_distance(&self) -> usize {
        self.designed_distance
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Coordinate of a support element.
    pub fn position(&self, a: Elem) -> Option<usize> {
        self.support.iter().position(|&x| x == a)
    }
}

/// All `α` with `G(α) ≠ 0`: first `1, α, α², …` in exponent order, then `0`
/// if `G(0) ≠ 0`.
pub fn full_support(f: &FieldCtx, g: &Poly) -> Result<Vec<Elem>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let order = f.size() as i64 - 1;
    let mut support: Vec<Elem> = (0..order).map(|i| f.prim_pow(i)).filter(|&a| !g.eval(a, f).is_zero()).collect();
    if !g.eval(Elem::ZERO, f).is_zero() {
        support.push(Elem::ZERO);
    }
    if support.is_empty() {
        return Err(Error::InvalidArgument("Goppa polynomial vanishes on the whole field".into()));
    }
    Ok(support)
}

/// The `t × n` matrix over `F_{q^m}` with entry `(r, i) = α_i^{r-1} / G(α_i)`.
pub fn parity_check_extension(spec: &GoppaSpec) -> Matrix {
    let f = &*spec.field;
    let t = spec.degree();
    let n = spec.n();
    let mut h = Matrix::zeros(t, n);
    for (i, &a) in spec.support.iter().enumerate() {
        let mut v = f.inv(spec.g.eval(a, f)).expect("G is nonzero on the support");
        for r in 0..t {
            h.set(r, i, v);
            v = f.mul(v, a);
        }
    }
    h
}

/// The subfield subcode over `F_q` of the kernel of [`parity_check_extension`].
pub fn build_code(spec: &GoppaSpec) -> LinearCode {
    let h = parity_check_extension(spec).subfield_expand(&spec.field);
    LinearCode::from_parity(spec.field.clone(), &h, spec.designed_distance, spec.provenance.clone())
}

/// Tests `Σ c_i / (x - α_i) ≡ 0 (mod G)` directly in `F_{q^m}[x]/(G)`.
pub fn membership_congruence(spec: &GoppaSpec, c: &[Elem]) -> Result<bool> {
    let f = &*spec.field;
    if c.len() != spec.n() {
        return Err(Error::InvalidArgument(format!("word has length {}, code has length {}", c.len(), spec.n())));
    }
    if let Some(i) = c.iter().position(|&x| !f.is_in_base_field(x)) {
        return Err(Error::InvalidArgument(format!("entry {i} is not in the base field")));
    }
    let ring = QuotientRing::new(spec.g.clone())?;
    let mut acc = Poly::zero();
    for (&ci, &a) in c.iter().zip(&spec.support) {
        if ci.is_zero() {
            continue;
        }
        let inv = ring.inverse_mod(&Poly::linear(a, f), f)?;
        acc = acc.add(&inv.scale(ci, f), f);
    }
    Ok(ring.reduce(&acc, f).is_zero())
}

/// Checks `Γ_q(L, N(g)) = Γ_q(L, N(g)/g)` by comparing row spaces.
pub fn wild_equivalence_check(field: &Arc<FieldCtx>, g: &Poly, support: &[Elem]) -> Result<bool> {
    let f = &**field;
    if g.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument("g must have degree at least 1".into()));
    }
    if let Some(&root) = g.roots_in_field(f)?.first() {
        return Err(Error::InvalidArgument(format!("g has the root {} in the field", f.format_elem(root))));
    }
    let norm = norm_poly_expand(g, f)?;
    let reduced = norm.exact_div(g, f)?;
    let big = GoppaSpec::new(field.clone(), support.to_vec(), norm)?;
    let small = GoppaSpec::new(field.clone(), support.to_vec(), reduced)?;
    let a = build_code(&big);
    let b = build_code(&small);
    if a.k() != b.k() {
        return Ok(false);
    }
    let same = match (a.generator(), b.generator()) {
        (Some(ga), Some(gb)) => ga.same_row_space(gb, f),
        _ => a.parity().same_row_space(b.parity(), f),
    };
    Ok(same)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{min_distance, DistanceOptions, MinDistance};

    fn f9() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(3, 1, 2, None).unwrap())
    }

    fn xt_plus_a(f: &FieldCtx, t: usize) -> Poly {
        Poly::monomial(Elem::ONE, t).add(&Poly::constant(f.prim_pow(t as i64)), f)
    }

    #[test]
    fn monomial_support_is_punctured_field() {
        let f = f9();
        let s = full_support(&f, &Poly::monomial(Elem::ONE, 2)).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(s[0], Elem::ONE);
        assert_eq!(s[1], f.prim());
        assert!(!s.contains(&Elem::ZERO));
    }

    #[test]
    fn seven_three_three() {
        let f = f9();
        let spec = GoppaSpec::with_full_support(f.clone(), xt_plus_a(&f, 2)).unwrap();
        assert_eq!(spec.n(), 7);
        assert_eq!(*spec.support().last().unwrap(), Elem::ZERO);
        let code = build_code(&spec);
        assert_eq!(code.k(), 3);
        assert!(code.check_invariants());
        assert!(code.k() + f.m() as usize * 2 >= code.n());
        let opts = DistanceOptions { early_exit: false, ..Default::default() };
        assert_eq!(min_distance(&code, &opts), MinDistance::Exact { d: 3 });
    }

    #[test]
    fn extension_rows() {
        let f = f9();
        let t = 3;
        let spec = GoppaSpec::with_full_support(f.clone(), Poly::monomial(Elem::ONE, t)).unwrap();
        let h = parity_check_extension(&spec);
        for (i, &a) in spec.support().iter().enumerate() {
            assert_eq!(h.get(0, i), f.inv(f.pow(a, t as u64)).unwrap());
            for r in 0..t {
                assert_eq!(h.get(r, i), f.pow_signed(a, r as i64 - t as i64).unwrap());
            }
        }
    }

    #[test]
    fn congruence_agrees_with_syndrome_exhaustively() {
        let f = f9();
        let spec = GoppaSpec::with_full_support(f.clone(), xt_plus_a(&f, 2)).unwrap();
        let code = build_code(&spec);
        let base = f.base_field_elements();
        let n = spec.n();
        let mut members = 0;
        for idx in 0..3u32.pow(n as u32) {
            let c: Vec<Elem> = (0..n).map(|i| base[((idx / 3u32.pow(i as u32)) % 3) as usize]).collect();
            let a = membership_congruence(&spec, &c).unwrap();
            assert_eq!(a, code.is_codeword(&c));
            members += a as u32;
        }
        assert_eq!(members, 27);
    }

    #[test]
    fn weight_one_words_are_rejected() {
        let f = f9();
        let spec = GoppaSpec::with_full_support(f.clone(), xt_plus_a(&f, 2)).unwrap();
        for i in 0..spec.n() {
            let mut c = vec![Elem::ZERO; spec.n()];
            c[i] = Elem::ONE;
            assert!(!membership_congruence(&spec, &c).unwrap());
        }
        assert!(membership_congruence(&spec, &vec![Elem::ZERO; spec.n()]).unwrap());
    }

    #[test]
    fn rejects_bad_specs() {
        let f = f9();
        let g = Poly::monomial(Elem::ONE, 2);
        assert!(GoppaSpec::new(f.clone(), vec![Elem::ZERO], g.clone()).is_err());
        assert!(GoppaSpec::new(f.clone(), vec![Elem::ONE, Elem::ONE], g.clone()).is_err());
        assert!(GoppaSpec::new(f.clone(), vec![Elem::ONE], Poly::one()).is_err());
        assert!(full_support(&f, &Poly::zero()).is_err());
    }
}
