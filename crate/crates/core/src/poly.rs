//! Dense univariate polynomials over a field of the tower.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{fp, Elem, FieldCtx};

/// Largest degree [`norm_poly_expand`] will produce.
pub const NORM_EXPANSION_CAP: usize = 512;

/// Coefficients constant term first, with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Elem::ONE)
    }

    pub fn constant(c: Elem) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(Elem::ONE, 1)
    }

    /// `c·x^k`.
    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut v = vec![Elem::ZERO; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - a`.
    pub fn linear(a: Elem, f: &FieldCtx) -> Self {
        Self::new(vec![f.neg(a), Elem::ONE])
    }

    /// Polynomial with prime-field integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64], f: &FieldCtx) -> Self {
        Self::new(coeffs.iter().map(|&c| f.scalar(c)).collect())
    }

    /// `Π (x - a)` over the given roots.
    pub fn from_roots(roots: &[Elem], f: &FieldCtx) -> Self {
        roots.iter().fold(Self::one(), |acc, &a| acc.mul(&Self::linear(a, f), f))
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn add(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem, f: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u64, f: &FieldCtx) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly, f: &FieldCtx) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            quot[shift] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(quot), Poly::new(r)))
    }

    pub fn rem(&self, d: &Poly, f: &FieldCtx) -> Result<Poly> {
        Ok(self.div_rem(d, f)?.1)
    }

    /// Quotient, failing unless `d` divides `self`.
    pub fn exact_div(&self, d: &Poly, f: &FieldCtx) -> Result<Poly> {
        let (q, r) = self.div_rem(d, f)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, f: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.leading()).expect("nonzero leading coefficient"), f)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `(g, s, t)` with `s·self + t·other = g` and `g` the monic gcd.
    pub fn xgcd(&self, other: &Poly, f: &FieldCtx) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, f).expect("r1 is nonzero");
            let s = s0.sub(&q.mul(&s1, f), f);
            let t = t0.sub(&q.mul(&t1, f), f);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = f.inv(r0.leading()).expect("nonzero");
        (r0.scale(li, f), s0.scale(li, f), t0.scale(li, f))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem, f: &FieldCtx) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Formal derivative; coefficient `k` is multiplied by `k mod p`.
    pub fn derivative(&self, f: &FieldCtx) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| f.mul(f.scalar(k as i64), c))
                .collect(),
        )
    }

    /// All roots in the field, ascending by element code, each listed once.
    pub fn roots_in_field(&self, f: &FieldCtx) -> Result<Vec<Elem>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(f.elements().filter(|&x| self.eval(x, f).is_zero()).collect())
    }

    /// No repeated factor. When `f' = 0` a nonconstant `f` is a `p`-th power
    /// and reported as not squarefree.
    pub fn is_squarefree(&self, f: &FieldCtx) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative(f);
                !d.is_zero() && self.gcd(&d, f).degree() == Some(0)
            }
        }
    }

    /// Irreducibility over `F_p`; every coefficient must be a prime-field scalar.
    pub fn is_irreducible_over_prime(&self, f: &FieldCtx) -> Result<bool> {
        match self.degree() {
            None | Some(0) => return Err(Error::InvalidArgument("irreducibility needs degree at least 1".into())),
            _ => {}
        }
        let raw = self
            .coeffs
            .iter()
            .map(|c| {
                if c.0 < f.p() {
                    Ok(c.0)
                } else {
                    Err(Error::InvalidArgument("coefficients must lie in the prime field".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(fp::is_irreducible(&raw, f.p()))
    }

    /// Parses either a coefficient list (`c0;c1;...` or, for scalar and `a^k`
    /// coefficients, `c0,c1,...`) or a sum of terms such as
    /// `x^8+x^7+x^2+x+1`, `2x^3-x+a^5`, `a^3*x^2+[1,2]`.
    pub fn parse(text: &str, f: &FieldCtx) -> Result<Poly> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if t.contains('x') {
            return parse_terms(&t, f);
        }
        let parts: Vec<&str> = if t.contains(';') { t.split(';').collect() } else { split_top_level(&t) };
        let coeffs = parts.iter().map(|c| f.parse_elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }

    /// Coefficient list separated by `;`; over extension fields each
    /// coefficient is bracketed, e.g. `[0,1];[1,0]`.
    pub fn format(&self, f: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let wrap = f.degree() > 1;
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|&c| if wrap { format!("[{}]", f.format_elem(c)) } else { f.format_elem(c) })
            .collect();
        parts.join(";")
    }

    /// Human-readable sum of terms, highest degree first. Prime-field
    /// coefficients print as integers, others as powers of the primitive element.
    pub fn to_shorthand(&self, f: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.0 < f.p() {
                c.0.to_string()
            } else {
                format!("a^{}", f.log(c).expect("nonzero"))
            };
            let mono = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            terms.push(match (coef.as_str(), mono.is_empty()) {
                (_, true) => coef,
                ("1", false) => mono,
                (_, false) if c.0 < f.p() => format!("{coef}{mono}"),
                _ => format!("{coef}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

fn split_top_level(t: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in t.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&t[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&t[start..]);
    out
}

fn parse_terms(t: &str, f: &FieldCtx) -> Result<Poly> {
    // split at top-level '+' / '-' that are not exponent signs
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let bytes = t.as_bytes();
    let mut depth = 0;
    let mut start = 0;
    let mut negative = false;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'[' => depth += 1,
            b']' => depth -= 1,
            b'+' | b'-' if depth == 0 && !(i > 0 && bytes[i - 1] == b'^') => {
                if i > start {
                    terms.push((negative, &t[start..i]));
                } else if i > 0 {
                    return Err(Error::Parse(format!("empty term in {t:?}")));
                }
                negative = bytes[i] == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= t.len() {
        return Err(Error::Parse(format!("dangling operator in {t:?}")));
    }
    terms.push((negative, &t[start..]));

    let mut acc = Poly::zero();
    for (neg, term) in terms {
        let (coef_text, exp) = match term.find('x') {
            Some(pos) => {
                let exp = match term[pos + 1..].strip_prefix('^') {
                    Some(e) if !e.is_empty() && e.bytes().all(|b| b.is_ascii_digit()) => {
                        e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                    }
                    Some(_) => return Err(Error::Parse(format!("bad exponent in {term:?}"))),
                    None if pos + 1 == term.len() => 1,
                    None => return Err(Error::Parse(format!("bad term {term:?}"))),
                };
                (term[..pos].trim_end_matches('*'), exp)
            }
            None => (term, 0),
        };
        let coef = if coef_text.is_empty() { Elem::ONE } else { f.parse_elem(coef_text)? };
        let coef = if neg { f.neg(coef) } else { coef };
        acc = acc.add(&Poly::monomial(coef, exp), f);
    }
    Ok(acc)
}

/// Arithmetic in `F[x]/(G)`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    modulus: Poly,
}

impl QuotientRing {
    pub fn new(modulus: Poly) -> Result<Self> {
        match modulus.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::InvalidArgument("quotient by a constant is the zero ring".into())),
            Some(_) => Ok(QuotientRing { modulus }),
        }
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Canonical representative of degree below `deg G`.
    pub fn reduce(&self, a: &Poly, f: &FieldCtx) -> Poly {
        a.rem(&self.modulus, f).expect("modulus is nonzero")
    }

    pub fn mul(&self, a: &Poly, b: &Poly, f: &FieldCtx) -> Poly {
        self.reduce(&a.mul(b, f), f)
    }

    /// Inverse modulo `G`; fails with [`Error::NotInvertible`] when `gcd(a, G) ≠ 1`.
    pub fn inverse_mod(&self, a: &Poly, f: &FieldCtx) -> Result<Poly> {
        let (g, s, _) = a.xgcd(&self.modulus, f);
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        Ok(self.reduce(&s, f))
    }
}

/// `g(x)^{(q^m-1)/(q-1)}` by square-and-multiply on the value, without expanding the norm.
pub fn norm_poly_eval(g: &Poly, x: Elem, f: &FieldCtx) -> Elem {
    f.pow(g.eval(x, f), f.norm_exponent())
}

/// The expanded norm polynomial `g^{(q^m-1)/(q-1)}`, for degree at most 512.
pub fn norm_poly_expand(g: &Poly, f: &FieldCtx) -> Result<Poly> {
    let r = g.degree().ok_or(Error::ZeroPolynomial)?;
    let deg = r * f.norm_exponent() as usize;
    if deg > NORM_EXPANSION_CAP {
        return Err(Error::ExpansionTooLarge(deg));
    }
    Ok(g.pow(f.norm_exponent(), f))
}
