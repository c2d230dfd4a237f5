//! Code families whose minimum distance equals the designed distance.
//!
//! Every constructor checks the hypotheses it relies on, builds the code, and
//! produces an explicit word of the designed weight through the support-ratio
//! criterion. A failed hypothesis is an error listing every failing check.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::bch::{dim_formula_general, dim_formula_norm, goppa_bch_map, BchSpec};
use crate::criterion::{self, check_support, derivative_construction, CriterionWitness, SupportCheck};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::goppa::{build_code, membership_congruence, GoppaSpec};
use crate::linalg::{min_distance, DistanceOptions, LinearCode, MinDistance, Provenance};
use crate::poly::{norm_poly_eval, norm_poly_expand, Poly};

/// BCH codes longer than this are described by parameters only: dimension from
/// cyclotomic cosets, no parity-check matrix.
pub const BCH_BUILD_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Wild,
    #[serde(rename = "xt_plus_A")]
    XtPlusA,
    Fractional,
    #[serde(rename = "binary_9_15")]
    Binary915,
    #[serde(rename = "pary_2p2")]
    Pary2p2,
    NormBch,
    #[serde(rename = "qt_plus_1")]
    QtPlus1,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 7] = [
        FamilyTag::Wild,
        FamilyTag::XtPlusA,
        FamilyTag::Fractional,
        FamilyTag::Binary915,
        FamilyTag::Pary2p2,
        FamilyTag::NormBch,
        FamilyTag::QtPlus1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Wild => "wild",
            FamilyTag::XtPlusA => "xt_plus_A",
            FamilyTag::Fractional => "fractional",
            FamilyTag::Binary915 => "binary_9_15",
            FamilyTag::Pary2p2 => "pary_2p2",
            FamilyTag::NormBch => "norm_bch",
            FamilyTag::QtPlus1 => "qt_plus_1",
        }
    }

    /// Whether the family is stated for BCH codes (coordinates indexed by exponents).
    pub fn is_bch(self) -> bool {
        matches!(self, FamilyTag::Binary915 | FamilyTag::Pary2p2 | FamilyTag::NormBch | FamilyTag::QtPlus1)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
struct HypothesisLog(Vec<HypothesisCheck>);

impl HypothesisLog {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.0.push(HypothesisCheck { name: name.to_string(), passed, detail: detail.into() });
        passed
    }

    /// Stops with every failure recorded so far.
    fn gate(&self) -> Result<()> {
        let failed: Vec<String> =
            self.0.iter().filter(|h| !h.passed).map(|h| format!("{}: {}", h.name, h.detail)).collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Hypotheses(failed))
        }
    }
}

/// How the reported dimension was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionSource {
    /// `n - rank` of the subfield-expanded parity-check matrix.
    Rank,
    /// Cyclotomic cosets, cross-checked with the closed-form formula.
    Cosets,
}

/// A built family member with its certificate.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub tag: FamilyTag,
    pub params: Vec<(String, String)>,
    pub field: Arc<FieldCtx>,
    pub n: usize,
    pub k: usize,
    pub dimension_source: DimensionSource,
    /// Closed-form dimension when a formula applies.
    pub formula_k: Option<usize>,
    pub code: Option<LinearCode>,
    /// The Goppa side; for BCH families this is `Γ_q(L, x^t)` on `L = (1, α, …)`.
    pub goppa: GoppaSpec,
    pub bch: Option<BchSpec>,
    pub witness: CriterionWitness,
    /// The witness in code coordinates (BCH coordinates for BCH families).
    pub word: Vec<Elem>,
    pub claimed_d: usize,
    pub hypotheses: Vec<HypothesisCheck>,
}

/// Independent confirmations that the witness word is a codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub weight: usize,
    pub weight_ok: bool,
    /// `Σ c_i/(x - α_i) ≡ 0 (mod G)` on the Goppa side.
    pub congruence: bool,
    /// Zero syndrome against the built parity-check matrix.
    pub syndrome: Option<bool>,
    /// `c(α^j) = 0` for `1 ≤ j < δ` on the BCH side.
    pub bch_eval: Option<bool>,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.weight_ok && self.congruence && self.syndrome != Some(false) && self.bch_eval != Some(false)
    }
}

impl FamilyReport {
    pub fn goppa_word(&self) -> Result<Vec<Elem>> {
        self.witness.embed(self.goppa.support())
    }

    pub fn check_witness(&self) -> Result<WitnessCheck> {
        let weight = self.word.iter().filter(|c| !c.is_zero()).count();
        let goppa_word = self.goppa_word()?;
        let congruence = membership_congruence(&self.goppa, &goppa_word)?;
        let syndrome = self.code.as_ref().map(|c| c.is_codeword(&self.word));
        let bch_eval = self.bch.as_ref().map(|b| b.is_codeword(&self.word));
        Ok(WitnessCheck { weight, weight_ok: weight == self.claimed_d, congruence, syndrome, bch_eval })
    }

    /// Exhaustive search within budget; otherwise the interval closed by the witness.
    pub fn distance(&self, opts: &DistanceOptions) -> MinDistance {
        let opts = DistanceOptions { witness_weight: Some(self.claimed_d), ..opts.clone() };
        match &self.code {
            Some(code) => min_distance(code, &opts),
            None => MinDistance::Interval { lo: self.claimed_d, hi: self.claimed_d },
        }
    }

    pub fn all_hypotheses_pass(&self) -> bool {
        self.hypotheses.iter().all(|h| h.passed)
    }
}

fn param(name: &str, v: impl fmt::Display) -> (String, String) {
    (name.to_string(), v.to_string())
}

fn require_witness(check: SupportCheck, f: &FieldCtx) -> Result<CriterionWitness> {
    match check {
        SupportCheck::Pass(w) => Ok(w),
        SupportCheck::Fail { index, value } => Err(Error::Hypotheses(vec![format!(
            "criterion: R_{index} = {} is not in F_q^*",
            f.format_elem(value)
        )])),
    }
}

/// `F_γ(x) = (x+γ)^{t+1} - (x+γ)`.
pub fn f_gamma(f: &FieldCtx, gamma: Elem, t: usize) -> Poly {
    let shift = Poly::new(vec![gamma, Elem::ONE]);
    shift.pow(t as u64 + 1, f).sub(&shift, f)
}

/// Lexicographically smallest monic polynomial of degree `r` without roots
/// (coefficients compared constant term first, each in coordinate-lex order).
pub fn first_rootless_monic(f: &FieldCtx, r: usize) -> Option<Poly> {
    let lex: Vec<Elem> = f.lex_elements().collect();
    let mut idx = vec![0usize; r];
    loop {
        let mut coeffs: Vec<Elem> = idx.iter().map(|&i| lex[i]).collect();
        coeffs.push(Elem::ONE);
        let g = Poly::new(coeffs);
        if f.elements().all(|a| !g.eval(a, f).is_zero()) {
            return Some(g);
        }
        // the highest non-leading coefficient varies fastest
        let mut j = r;
        loop {
            if j == 0 {
                return None;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < lex.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

fn goppa_report(
    tag: FamilyTag,
    params: Vec<(String, String)>,
    spec: GoppaSpec,
    witness: CriterionWitness,
    log: HypothesisLog,
) -> Result<FamilyReport> {
    let code = build_code(&spec);
    let word = witness.embed(spec.support())?;
    Ok(FamilyReport {
        tag,
        params,
        field: spec.field().clone(),
        n: code.n(),
        k: code.k(),
        dimension_source: DimensionSource::Rank,
        formula_k: None,
        claimed_d: spec.designed_distance(),
        code: Some(code),
        goppa: spec,
        bch: None,
        witness,
        word,
        hypotheses: log.0,
    })
}

/// Wild Goppa code `Γ_q(F_{q^m}, N(g))` with `deg g = r`, `r > 1`, `r | q - 1`.
///
/// `g` defaults to [`first_rootless_monic`]; the witness lives on the roots of
/// `F_γ` for the lex-smallest nonzero `γ`.
pub fn wild(field: Arc<FieldCtx>, r: usize, g: Option<Poly>) -> Result<FamilyReport> {
    let f = &*field;
    let q = f.q() as usize;
    let mut log = HypothesisLog::default();
    log.check("m >= 2", f.m() >= 2, format!("m = {}", f.m()));
    log.check("r > 1", r > 1, format!("r = {r}"));
    log.check("r | q-1", r >= 1 && (q - 1) % r == 0, format!("q - 1 = {}", q - 1));
    log.gate()?;
    let g = match g {
        Some(g) => g,
        None => first_rootless_monic(f, r).ok_or_else(|| Error::Hypotheses(vec!["no rootless monic g".into()]))?,
    };
    log.check("deg g = r", g.degree() == Some(r), format!("deg g = {}", g.degree().map_or("-".into(), |d| d.to_string())));
    let roots = g.roots_in_field(f)?;
    log.check("g has no roots", roots.is_empty(), format!("{} roots", roots.len()));
    log.gate()?;

    let e = f.norm_exponent() as usize;
    let t = r * e;
    let big_g = norm_poly_expand(&g, f)?;
    let values_ok = f.elements().all(|a| {
        let v = norm_poly_eval(&g, a, f);
        f.is_in_base_field_star(v) && big_g.eval(a, f) == v
    });
    log.check("N(g)(α) in F_q^* for all α", values_ok, "checked at every field element");
    let gamma = f.lex_elements().find(|a| !a.is_zero()).expect("field has a nonzero element");
    let big_f = f_gamma(f, gamma, t);
    let froots = big_f.roots_in_field(f)?;
    log.check("F_γ has t+1 distinct roots", froots.len() == t + 1, format!("{} roots, t = {t}", froots.len()));
    let fp = big_f.derivative(f);
    let units = froots.iter().all(|&a| f.is_in_base_field_star(fp.eval(a, f)));
    log.check("F_γ' in F_q^* at every root", units, "");
    log.gate()?;

    let witness = require_witness(check_support(f, &big_g, &froots)?, f)?;
    // no roots, so the support is the whole field
    let spec = GoppaSpec::with_full_support(field.clone(), big_g)?.with_designed_distance(t + 1, Provenance::WildGoppa { r });
    let params = vec![
        param("q", q),
        param("m", f.m()),
        param("r", r),
        param("g", g.format(f)),
        param("gamma", f.format_elem(gamma)),
    ];
    goppa_report(FamilyTag::Wild, params, spec, witness, log)
}

/// `Γ_q(L, x^t + A)` for odd `q`, `t | q^m - 1`, `A` a `t`-th power (default `α^t`).
pub fn xt_plus_a(field: Arc<FieldCtx>, t: usize, a: Option<Elem>) -> Result<FamilyReport> {
    let f = &*field;
    let order = f.size() as usize - 1;
    let a = a.unwrap_or_else(|| f.prim_pow(t as i64));
    let mut log = HypothesisLog::default();
    log.check("q odd", f.p() != 2, format!("q = {}", f.q()));
    log.check("t >= 1", t >= 1, format!("t = {t}"));
    log.check("t | q^m-1", t >= 1 && order % t == 0, format!("q^m - 1 = {order}"));
    log.check("A != 0", !a.is_zero(), f.format_elem(a));
    log.gate()?;
    log.check("A is a t-th power", f.kth_power_test(a, t as u64)?, f.format_elem(a));
    log.gate()?;

    let g = Poly::monomial(Elem::ONE, t).add(&Poly::constant(a), f);
    let big_f = Poly::monomial(Elem::ONE, t + 1).sub(&Poly::monomial(a, 1), f);
    let mut elems: Vec<Elem> = big_f.roots_in_field(f)?.into_iter().filter(|r| !r.is_zero()).collect();
    log.check("x^t = A has t solutions", elems.len() == t, format!("{} solutions", elems.len()));
    log.gate()?;
    elems.push(Elem::ZERO);
    let witness = require_witness(check_support(f, &g, &elems)?, f)?;
    let expected = f.neg(f.div(f.scalar(2), f.scalar(t as i64))?);
    log.check(
        "all ratios equal -2/t",
        witness.ratios().iter().all(|&r| r == expected),
        f.format_elem(expected),
    );
    log.gate()?;
    let spec = GoppaSpec::with_full_support(field.clone(), g)?;
    let params = vec![param("q", f.q()), param("m", f.m()), param("t", t), param("A", f.format_elem(a))];
    goppa_report(FamilyTag::XtPlusA, params, spec, witness, log)
}

/// `Γ_q(L, (x+u)^t - λ(x+v)^t)` with `λ ∉ {0, 1}` a `(t+1)`-th power.
///
/// Defaults: `u = 0`, `v = 1`, `λ = α^{t+1}` (or `α^{2(t+1)}` if that is 1).
pub fn fractional(
    field: Arc<FieldCtx>,
    t: usize,
    u: Option<Elem>,
    v: Option<Elem>,
    lambda: Option<Elem>,
) -> Result<FamilyReport> {
    let f = &*field;
    let order = f.size() as usize - 1;
    let u = u.unwrap_or(Elem::ZERO);
    let v = v.unwrap_or(Elem::ONE);
    let lambda = lambda.unwrap_or_else(|| {
        let l = f.prim_pow(t as i64 + 1);
        if l == Elem::ONE {
            f.prim_pow(2 * (t as i64 + 1))
        } else {
            l
        }
    });
    let mut log = HypothesisLog::default();
    log.check("t >= 1", t >= 1, format!("t = {t}"));
    log.check("t+1 | q^m-1", order % (t + 1) == 0, format!("q^m - 1 = {order}"));
    log.check("p ∤ t+1", (t + 1) % f.p() as usize != 0, format!("p = {}", f.p()));
    log.check("u != v", u != v, "");
    log.check("λ ∉ {0, 1}", !lambda.is_zero() && lambda != Elem::ONE, f.format_elem(lambda));
    log.gate()?;
    log.check("λ is a (t+1)-th power", f.kth_power_test(lambda, t as u64 + 1)?, f.format_elem(lambda));
    log.gate()?;

    let xu = Poly::new(vec![u, Elem::ONE]);
    let xv = Poly::new(vec![v, Elem::ONE]);
    let big_f = xu.pow(t as u64 + 1, f).sub(&xv.pow(t as u64 + 1, f).scale(lambda, f), f);
    let expected_g = xu.pow(t as u64, f).sub(&xv.pow(t as u64, f).scale(lambda, f), f);
    let (g, roots) = derivative_construction(f, &big_f)?;
    log.check("G = (t+1)^{-1} F'", g == expected_g, "");
    log.gate()?;
    let witness = require_witness(check_support(f, &g, &roots)?, f)?;
    log.check("all ratios equal 1", witness.ratios().iter().all(|&r| r == Elem::ONE), "");
    log.gate()?;
    let spec = GoppaSpec::with_full_support(field.clone(), g)?;
    let params = vec![
        param("q", f.q()),
        param("m", f.m()),
        param("t", t),
        param("u", f.format_elem(u)),
        param("v", f.format_elem(v)),
        param("lambda", f.format_elem(lambda)),
    ];
    goppa_report(FamilyTag::Fractional, params, spec, witness, log)
}

/// Shared tail of the BCH families: `witness` lives on the Goppa side of
/// `Γ_q(L, x^t)` with `L = (1, α, …, α^{n-1})`.
fn bch_report(
    tag: FamilyTag,
    params: Vec<(String, String)>,
    field: Arc<FieldCtx>,
    delta: usize,
    witness: CriterionWitness,
    formula_k: Option<usize>,
    mut log: HypothesisLog,
) -> Result<FamilyReport> {
    let f = &*field;
    let n = f.size() as usize - 1;
    let support: Vec<Elem> = (0..n as i64).map(|i| f.prim_pow(i)).collect();
    let goppa = GoppaSpec::new(field.clone(), support, Poly::monomial(Elem::ONE, delta - 1))?;
    let spec = BchSpec::new(field.clone(), delta)?;
    let goppa_word = witness.embed(goppa.support())?;
    let word = goppa_bch_map(&goppa, &goppa_word)?;
    let (code, source) = if n <= BCH_BUILD_LIMIT {
        (Some(spec.build()?), DimensionSource::Rank)
    } else {
        (None, DimensionSource::Cosets)
    };
    let k = code.as_ref().map_or(spec.dimension(), LinearCode::k);
    if let Some(fk) = formula_k {
        log.check("dimension formula", fk == k, format!("formula {fk}, computed {k}"));
    }
    log.gate()?;
    Ok(FamilyReport {
        tag,
        params,
        field,
        n,
        k,
        dimension_source: source,
        formula_k,
        code,
        goppa,
        bch: Some(spec),
        witness,
        word,
        claimed_d: delta,
        hypotheses: log.0,
    })
}

/// Witness on the Goppa side for the locators `x_j` (roots of `M`): the points
/// `x_1^{-1}, …, x_t^{-1}, 1`.
fn locator_witness(f: &FieldCtx, xs: &[Elem], log: &mut HypothesisLog) -> Result<CriterionWitness> {
    let check = criterion::bch_locators(f, xs)?;
    log.check("R_j = -S_j", check.consistent, "");
    let s_ok = check.s.iter().all(|&s| f.is_in_base_field_star(s));
    log.check("S_j in F_q^*", s_ok, "");
    log.gate()?;
    let mut elems: Vec<Elem> = xs.iter().map(|&x| f.inv(x)).collect::<Result<_>>()?;
    elems.push(Elem::ONE);
    require_witness(check_support(f, &Poly::monomial(Elem::ONE, xs.len()), &elems)?, f)
}

pub fn l1_poly(f: &FieldCtx) -> Poly {
    Poly::from_ints(&[1, 1, 1, 0, 0, 0, 0, 1, 1], f)
}

pub fn l2_poly(f: &FieldCtx) -> Poly {
    Poly::from_ints(&[1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1], f)
}

/// `C(2, 2^m - 1, δ, 1)` for `δ = 9, 8 | m` (locators from `L_1`) or
/// `δ = 15, 14 | m` (from `L_2`). Desk scale covers `m = 8` and `m = 14`.
pub fn binary_9_15(m: u32, delta: usize) -> Result<FamilyReport> {
    let mut log = HypothesisLog::default();
    let (divisor, name) = match delta {
        9 => (8, "L_1"),
        15 => (14, "L_2"),
        _ => return Err(Error::InvalidArgument(format!("designed distance must be 9 or 15, got {delta}"))),
    };
    log.check("m >= 8", m >= 8, format!("m = {m}"));
    log.check(&format!("{divisor} | m"), m % divisor == 0, format!("m = {m}"));
    log.gate()?;
    if m != divisor {
        return Err(Error::OutOfRange(format!("only m = {divisor} is in reach for δ = {delta}")));
    }
    let field = Arc::new(FieldCtx::new(2, 1, m, None)?);
    let f = &*field;
    let lp = if delta == 9 { l1_poly(f) } else { l2_poly(f) };
    log.check(&format!("{name} irreducible over F_2"), lp.is_irreducible_over_prime(f)?, lp.to_shorthand(f));
    let cert = criterion::m_poly_check(f, &lp)?;
    log.check("x(x-1)M' ≡ 1 (mod M)", cert.w == Elem::ONE, f.format_elem(cert.w));
    log.check("both routes for clause (ii)", cert.recurrences_checked, "");
    log.gate()?;
    let witness = locator_witness(f, &cert.roots, &mut log)?;
    let n = f.size() as u64 - 1;
    let formula_k = dim_formula_general(2, m, n, delta as u64).ok().map(|k| k as usize);
    let params = vec![param("m", m), param("delta", delta), param("M", lp.to_shorthand(f))];
    bch_report(FamilyTag::Binary915, params, field, delta, witness, formula_k, log)
}

/// `L(x) = x^{2p+1} + x^{2p} + … + x^2 - x - 1`.
pub fn pary_l_poly(p: u32, f: &FieldCtx) -> Poly {
    let mut c = vec![1i64; 2 * p as usize + 2];
    c[0] = -1;
    c[1] = -1;
    Poly::from_ints(&c, f)
}

/// `C(p, p^p - 1, 2p + 2, 1)` for an odd prime `p ∈ {3, 5}`.
pub fn pary_2p2(p: u32) -> Result<FamilyReport> {
    let mut log = HypothesisLog::default();
    log.check("p odd prime", p > 2 && crate::field::is_prime(p as u64), format!("p = {p}"));
    log.gate()?;
    if p > 5 {
        return Err(Error::OutOfRange(format!("p = {p} gives length p^p - 1 beyond desk scale")));
    }
    let field = Arc::new(FieldCtx::new(p, 1, p, None)?);
    let f = &*field;
    let pu = p as usize;
    let l = pary_l_poly(p, f);
    let mut my = vec![1i64; pu + 1];
    my[0] = -1;
    let m_y = Poly::from_ints(&my, f);
    let mut m_x2 = vec![0i64; 2 * pu + 1];
    for (i, &c) in my.iter().enumerate() {
        m_x2[2 * i] = c;
    }
    let m_x2 = Poly::from_ints(&m_x2, f);
    let factored = Poly::from_ints(&[1, 1], f).mul(&m_x2, f);
    log.check("L = (x+1)M(x^2)", factored == l, l.to_shorthand(f));
    log.check("M(y) irreducible", m_y.is_irreducible_over_prime(f)?, m_y.to_shorthand(f));
    let mut h = vec![0i64; pu + 1];
    h[0] = -1;
    h[pu - 1] = 1;
    h[pu] = 1;
    let h = Poly::from_ints(&h, f);
    log.check("x^p + x^(p-1) - 1 irreducible", h.is_irreducible_over_prime(f)?, h.to_shorthand(f));
    let mut a_s = vec![0i64; pu + 1];
    a_s[0] = -1;
    a_s[1] = -1;
    a_s[pu] = 1;
    let a_s = Poly::from_ints(&a_s, f);
    log.check("x^p - x - 1 irreducible", a_s.is_irreducible_over_prime(f)?, a_s.to_shorthand(f));
    log.check("L(1) = -2", l.eval(Elem::ONE, f) == f.scalar(-2), f.format_elem(l.eval(Elem::ONE, f)));
    log.gate()?;
    let cert = criterion::m_poly_check(f, &l)?;
    log.check("L has 2p+1 distinct nonzero roots", cert.roots.len() == 2 * pu + 1, format!("{}", cert.roots.len()));
    log.check("b = -2", cert.b == f.scalar(-2), f.format_elem(cert.b));
    log.check("w = -2", cert.w == f.scalar(-2), f.format_elem(cert.w));
    log.check("both routes for clause (ii)", cert.recurrences_checked, "");
    log.gate()?;
    let witness = locator_witness(f, &cert.roots, &mut log)?;
    let n = f.size() as u64 - 1;
    let delta = 2 * pu + 2;
    let closed = (pu.pow(p) - 1 - 2 * pu * pu + pu) as u64;
    let general = dim_formula_general(p as u64, p, n, delta as u64)?;
    log.check("p^p - 1 - 2p^2 + p matches the general formula", closed == general, format!("{closed} vs {general}"));
    let params = vec![param("p", p), param("L", l.to_shorthand(f))];
    bch_report(FamilyTag::Pary2p2, params, field, delta, witness, Some(closed as usize), log)
}

/// `C(q, q^m - 1, t + 1, 1)` with `t = r(q^m-1)/(q-1)`, `1 ≤ r < q - 1`, `r | q - 1`.
pub fn norm_bch(field: Arc<FieldCtx>, r: usize) -> Result<FamilyReport> {
    let f = &*field;
    let q = f.q() as usize;
    let mut log = HypothesisLog::default();
    log.check("1 <= r < q-1", r >= 1 && r + 1 < q, format!("r = {r}, q = {q}"));
    log.check("r | q-1", r >= 1 && (q - 1) % r == 0, format!("q - 1 = {}", q - 1));
    log.gate()?;
    let t = r * f.norm_exponent() as usize;
    let gamma = f
        .lex_elements()
        .find(|&a| !a.is_zero() && f.pow(a, t as u64) != Elem::ONE)
        .ok_or_else(|| Error::Hypotheses(vec!["no γ with γ^t ≠ 1".into()]))?;
    let big_f = f_gamma(f, gamma, t);
    let roots = big_f.roots_in_field(f)?;
    log.check("F_γ has t+1 distinct roots", roots.len() == t + 1, format!("{} roots", roots.len()));
    log.check("roots of F_γ are nonzero", !roots.contains(&Elem::ZERO), "");
    log.gate()?;
    let witness = require_witness(check_support(f, &Poly::monomial(Elem::ONE, t), &roots)?, f)?;
    let formula_k = dim_formula_norm(q as u64, f.m(), r as u64)? as usize;
    let params = vec![param("q", q), param("m", f.m()), param("r", r), param("gamma", f.format_elem(gamma))];
    bch_report(FamilyTag::NormBch, params, field, t + 1, witness, Some(formula_k), log)
}

/// `C(q, q^m - 1, q^t + 1, 1)` for `t | m`, `t < m`.
pub fn qt_plus_1(field: Arc<FieldCtx>, t: u32) -> Result<FamilyReport> {
    let f = &*field;
    let m = f.m();
    let mut log = HypothesisLog::default();
    log.check("t >= 1", t >= 1, format!("t = {t}"));
    log.check("t | m", t >= 1 && m % t == 0, format!("m = {m}"));
    log.check("t < m", t < m, format!("m = {m}"));
    log.gate()?;
    let qt = (f.q() as u64).pow(t);
    let frob_t = |a: Elem| f.pow(a, qt);
    let b = f
        .lex_elements()
        .find(|&a| frob_t(a) != a)
        .ok_or_else(|| Error::Hypotheses(vec!["no b outside F_{q^t}".into()]))?;
    let bq = frob_t(b);
    let bq2 = frob_t(bq);
    let lambda = f.div(f.sub(b, bq), f.sub(bq, bq2))?;
    let qt = qt as usize;
    let mut coeffs = vec![Elem::ZERO; qt + 2];
    coeffs[0] = lambda;
    coeffs[qt] = f.add(Elem::ONE, lambda);
    coeffs[qt + 1] = Elem::ONE;
    let big_f = Poly::new(coeffs);
    let roots = big_f.roots_in_field(f)?;
    log.check("F has q^t+1 distinct roots", roots.len() == qt + 1, format!("{} roots", roots.len()));
    log.check("roots of F are nonzero", !roots.contains(&Elem::ZERO), "");
    let g = Poly::monomial(Elem::ONE, qt);
    log.check("F' = x^(q^t)", big_f.derivative(f) == g, "");
    let minus_one = f.neg(Elem::ONE);
    let mut images: Vec<Elem> = roots
        .iter()
        .filter(|&&x| x != minus_one)
        .filter_map(|&x| f.div(f.add(f.mul(bq, x), b), f.add(x, Elem::ONE)).ok())
        .collect();
    images.sort_unstable();
    let mut sub: Vec<Elem> = f.elements().filter(|&a| frob_t(a) == a).collect();
    sub.sort_unstable();
    log.check(
        "roots ≠ -1 map onto F_{q^t}",
        roots.contains(&minus_one) && images == sub,
        format!("{} images, |F_(q^t)| = {}", images.len(), sub.len()),
    );
    log.gate()?;
    let (g2, roots) = derivative_construction(f, &big_f)?;
    log.check("G = F'", g2 == g, "");
    log.gate()?;
    let witness = require_witness(check_support(f, &g, &roots)?, f)?;
    let n = f.size() as u64 - 1;
    let delta = qt + 1;
    let formula_k = dim_formula_general(f.q() as u64, m, n, delta as u64).ok().map(|k| k as usize);
    let params = vec![
        param("q", f.q()),
        param("m", m),
        param("t", t),
        param("b", f.format_elem(b)),
        param("lambda", f.format_elem(lambda)),
    ];
    bch_report(FamilyTag::QtPlus1, params, field, delta, witness, formula_k, log)
}

/// One row of a parameter table: `(q, m, r or t) → [n, k, d]_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub q: u32,
    pub m: u32,
    pub param: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

const fn row(q: u32, m: u32, param: usize, n: usize, k: usize, d: usize) -> TableRow {
    TableRow { q, m, param, n, k, d }
}

/// Wild Goppa codes, parameter `r`.
pub const TABLE2: &[TableRow] = &[
    row(5, 2, 2, 25, 9, 13),
    row(7, 2, 2, 49, 25, 17),
    row(7, 2, 3, 49, 16, 25),
    row(9, 2, 2, 81, 49, 21),
    row(9, 2, 4, 81, 25, 41),
];

/// `G = x^t + A`, parameter `t`.
pub const TABLE3: &[TableRow] = &[
    row(3, 2, 2, 7, 3, 3),
    row(3, 3, 2, 27, 21, 3),
    row(3, 4, 4, 77, 61, 5),
    row(3, 4, 8, 73, 42, 9),
    row(3, 4, 10, 71, 37, 11),
    row(5, 2, 2, 23, 19, 3),
    row(5, 2, 4, 21, 13, 5),
    row(5, 2, 6, 19, 10, 7),
    row(5, 2, 8, 25, 10, 9),
    row(5, 3, 2, 123, 117, 3),
    row(5, 3, 4, 125, 113, 5),
    row(7, 2, 2, 47, 43, 3),
    row(7, 2, 3, 49, 43, 4),
    row(7, 2, 4, 45, 37, 5),
    row(7, 2, 8, 41, 28, 9),
    row(7, 2, 12, 37, 14, 13),
    row(9, 2, 2, 79, 75, 3),
    row(9, 2, 4, 77, 69, 5),
    row(9, 2, 8, 73, 57, 9),
    row(9, 2, 10, 71, 54, 11),
];

/// Fractional-linear family, parameter `t`.
pub const TABLE4: &[TableRow] = &[
    row(3, 2, 1, 8, 6, 2),
    row(3, 2, 3, 8, 4, 4),
    row(3, 3, 1, 26, 23, 2),
    row(3, 3, 12, 27, 4, 13),
    row(3, 4, 1, 80, 76, 2),
    row(3, 4, 3, 80, 72, 4),
    row(3, 4, 4, 81, 65, 5),
    row(3, 4, 7, 80, 52, 8),
    row(4, 2, 2, 15, 11, 3),
    row(4, 2, 4, 15, 9, 5),
    row(4, 3, 2, 63, 57, 3),
    row(4, 3, 6, 64, 46, 7),
    row(5, 2, 1, 24, 22, 2),
    row(5, 2, 3, 25, 19, 4),
    row(5, 2, 5, 24, 16, 6),
    row(5, 2, 7, 24, 10, 8),
    row(5, 3, 1, 124, 121, 2),
    row(5, 3, 3, 124, 115, 4),
    row(5, 3, 30, 125, 53, 31),
    row(7, 2, 1, 48, 46, 2),
    row(7, 2, 2, 49, 45, 3),
    row(7, 2, 3, 49, 43, 4),
    row(7, 2, 5, 48, 38, 6),
    row(7, 2, 7, 48, 36, 8),
    row(8, 2, 2, 63, 59, 3),
    row(8, 2, 6, 64, 52, 7),
    row(9, 2, 1, 80, 78, 2),
    row(9, 2, 3, 80, 74, 4),
    row(9, 2, 4, 81, 73, 5),
    row(9, 2, 7, 80, 66, 8),
];

/// Norm-designed BCH codes, parameter `r`.
pub const TABLE5: &[TableRow] = &[
    row(3, 2, 1, 8, 3, 5),
    row(3, 3, 1, 26, 7, 14),
    row(3, 4, 1, 80, 15, 41),
    row(3, 5, 1, 242, 31, 122),
    row(4, 2, 1, 15, 8, 6),
    row(4, 3, 1, 63, 26, 22),
    row(4, 4, 1, 255, 80, 86),
    row(5, 2, 1, 24, 15, 7),
    row(5, 2, 2, 24, 8, 13),
    row(5, 3, 1, 124, 63, 32),
    row(5, 3, 2, 124, 26, 63),
    row(7, 2, 1, 48, 35, 9),
    row(7, 2, 2, 48, 24, 17),
    row(7, 2, 3, 48, 15, 25),
    row(7, 3, 1, 342, 215, 58),
    row(7, 3, 2, 342, 124, 115),
    row(7, 3, 3, 342, 63, 172),
    row(8, 2, 1, 63, 48, 10),
    row(8, 3, 1, 511, 342, 74),
    row(9, 2, 1, 80, 63, 11),
    row(9, 2, 2, 80, 48, 21),
    row(9, 2, 4, 80, 24, 41),
];

pub fn table(number: u8) -> Option<(FamilyTag, &'static [TableRow])> {
    match number {
        2 => Some((FamilyTag::Wild, TABLE2)),
        3 => Some((FamilyTag::XtPlusA, TABLE3)),
        4 => Some((FamilyTag::Fractional, TABLE4)),
        5 => Some((FamilyTag::NormBch, TABLE5)),
        _ => None,
    }
}

/// Builds the family member for a table row with default parameter choices.
pub fn build_row(tag: FamilyTag, row: &TableRow) -> Result<FamilyReport> {
    let field = Arc::new(FieldCtx::for_prime_power(row.q, row.m)?);
    match tag {
        FamilyTag::Wild => wild(field, row.param, None),
        FamilyTag::XtPlusA => xt_plus_a(field, row.param, None),
        FamilyTag::Fractional => fractional(field, row.param, None, None, None),
        FamilyTag::NormBch => norm_bch(field, row.param),
        _ => Err(Error::InvalidArgument(format!("family {tag} has no table"))),
    }
}

/// Comparison of one table row with the computation.
#[derive(Clone, Debug, Serialize)]
pub struct RowOutcome {
    pub row: TableRow,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub distance: Option<MinDistance>,
    pub witness_ok: bool,
    pub n_ok: bool,
    pub k_ok: bool,
    pub d_ok: bool,
    pub error: Option<String>,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.n_ok && self.k_ok && self.d_ok && self.witness_ok
    }
}

pub fn reproduce_row(tag: FamilyTag, row: &TableRow, opts: &DistanceOptions) -> RowOutcome {
    let failed = |e: Error| RowOutcome {
        row: *row,
        n: None,
        k: None,
        distance: None,
        witness_ok: false,
        n_ok: false,
        k_ok: false,
        d_ok: false,
        error: Some(e.to_string()),
    };
    let report = match build_row(tag, row) {
        Ok(r) => r,
        Err(e) => return failed(e),
    };
    let witness_ok = match report.check_witness() {
        Ok(w) => w.passed(),
        Err(e) => return failed(e),
    };
    let distance = report.distance(opts);
    RowOutcome {
        row: *row,
        n: Some(report.n),
        k: Some(report.k),
        distance: Some(distance),
        witness_ok,
        n_ok: report.n == row.n,
        k_ok: report.k == row.k,
        d_ok: distance.certified() == Some(row.d) && report.claimed_d == row.d,
        error: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u32, m: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::for_prime_power(q, m).unwrap())
    }

    #[test]
    fn tags_round_trip() {
        for t in FamilyTag::ALL {
            assert_eq!(t.as_str().parse::<FamilyTag>().unwrap(), t);
        }
        assert!("nope".parse::<FamilyTag>().is_err());
    }

    #[test]
    fn xt_plus_a_small() {
        let r = xt_plus_a(field(3, 2), 2, None).unwrap();
        assert_eq!((r.n, r.k, r.claimed_d), (7, 3, 3));
        assert!(r.check_witness().unwrap().passed());
        assert!(r.all_hypotheses_pass());
    }

    #[test]
    fn xt_plus_a_rejects_non_powers() {
        let f = field(3, 2);
        // α is not a square
        assert!(matches!(xt_plus_a(f.clone(), 2, Some(f.prim())), Err(Error::Hypotheses(_))));
        assert!(matches!(xt_plus_a(f.clone(), 3, None), Err(Error::Hypotheses(_))));
        assert!(matches!(xt_plus_a(field(4, 2), 3, None), Err(Error::Hypotheses(_))));
    }

    #[test]
    fn fractional_small() {
        let r = fractional(field(3, 2), 3, None, None, None).unwrap();
        assert_eq!((r.n, r.k, r.claimed_d), (8, 4, 4));
        assert!(r.check_witness().unwrap().passed());
        let f = field(3, 2);
        assert!(fractional(f.clone(), 2, None, None, None).is_err());
        assert!(fractional(f.clone(), 3, Some(Elem::ONE), Some(Elem::ONE), None).is_err());
        assert!(fractional(f.clone(), 3, None, None, Some(Elem::ONE)).is_err());
        assert!(fractional(f.clone(), 3, None, None, Some(f.prim())).is_err());
    }

    #[test]
    fn norm_bch_small() {
        let r = norm_bch(field(3, 2), 1).unwrap();
        assert_eq!((r.n, r.k, r.claimed_d), (8, 3, 5));
        assert!(r.check_witness().unwrap().passed());
        assert!(norm_bch(field(3, 2), 2).is_err());
    }

    #[test]
    fn rootless_monic() {
        let f = field(5, 2);
        let g = first_rootless_monic(&f, 2).unwrap();
        assert!(g.roots_in_field(&f).unwrap().is_empty());
        assert_eq!(g.degree(), Some(2));
    }
}
