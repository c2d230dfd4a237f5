//! Finite field towers `F_p ⊂ F_q ⊂ F_{q^m}`.
//!
//! Elements of the top field are stored as their polynomial-basis digit
//! vector packed into an integer code, `Σ d_i p^i`. Prime-field scalars
//! therefore have the same code in every field of a given characteristic.
//! Multiplication uses log/antilog tables and addition uses Zech logarithms,
//! so every operation is a handful of table lookups.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported field, in elements.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of a [`FieldCtx`], identified by its packed digit code.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Parsed form of a field description `p^s:m[:modulus=c0,c1,...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed field spec {text:?}, expected p^s:m[:modulus=c0,c1,...]"));
        let mut parts = text.trim().split(':');
        let head = parts.next().ok_or_else(bad)?;
        let (p, s) = match head.split_once('^') {
            Some((p, s)) => (p.trim().parse().map_err(|_| bad())?, s.trim().parse().map_err(|_| bad())?),
            None => (head.trim().parse().map_err(|_| bad())?, 1),
        };
        let m = match parts.next() {
            Some(m) => m.trim().parse().map_err(|_| bad())?,
            None => 1,
        };
        let modulus = match parts.next() {
            Some(rest) => {
                let list = rest.trim().strip_prefix("modulus=").ok_or_else(bad)?;
                let coeffs = list
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Some(coeffs)
            }
            None => None,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(FieldSpec { p, s, m, modulus })
    }
}

/// The tower `F_p ⊂ F_q ⊂ F_{q^m}` with `q = p^s`.
///
/// Immutable once built; share it behind an `Arc`.
pub struct FieldCtx {
    p: u32,
    s: u32,
    m: u32,
    q: u32,
    size: u32,
    /// `size - 1`, the order of the multiplicative group.
    order: u32,
    degree: usize,
    modulus: Vec<u32>,
    prim: Elem,
    /// `exp[k] = prim^k`, stored twice over so that `log a + log b` needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + prim^k)`, or `NO_LOG` when that sum is zero.
    zech: Vec<u32>,
    /// `(size - 1) / (q - 1)`; `F_q^*` is generated by `prim^base_step`.
    base_step: u32,
    /// Inverse of the change of basis from `{ω^a β^j}` to the polynomial basis, over `F_p`.
    coord_inv: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("prim", &self.prim)
            .finish()
    }
}

impl FieldCtx {
    /// Builds `F_{p^{s m}}` viewed as a degree-`m` extension of `F_{p^s}`.
    ///
    /// Without a modulus the lexicographically smallest monic irreducible of
    /// degree `s·m` is used (coefficients compared constant term first). The
    /// primitive element is the first element of that same coordinate order
    /// whose multiplicative order is `p^{sm} - 1`.
    pub fn new(p: u32, s: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if s == 0 || m == 0 {
            return Err(Error::InvalidArgument("extension degrees must be positive".into()));
        }
        let degree = (s as u64) * (m as u64);
        let size = (p as u64)
            .checked_pow(degree as u32)
            .filter(|&n| n <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p: p as u64, degree })?;
        let degree = degree as usize;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != degree + 1 || c[degree] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {degree}, got {c:?}"
                    )));
                }
                if c.iter().any(|&d| d >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in 0..{p}")));
                }
                if !fp::is_irreducible(&c, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                c
            }
            None => smallest_irreducible(p, degree),
        };

        let size = size as u32;
        let order = size - 1;
        let q = p.pow(s);
        let mut ctx = FieldCtx {
            p,
            s,
            m,
            q,
            size,
            order,
            degree,
            modulus,
            prim: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
            base_step: order / (q - 1),
            coord_inv: Vec::new(),
        };
        ctx.prim = ctx.find_primitive();
        ctx.build_tables();
        ctx.build_coordinates();
        Ok(ctx)
    }

    /// Convenience constructor for the prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, 1, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::new(spec.p, spec.s, spec.m, spec.modulus.clone())
    }

    /// Builds the tower for a prime power `q` and extension degree `m`.
    pub fn for_prime_power(q: u32, m: u32) -> Result<Self> {
        let (p, s) = prime_power(q as u64).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        Self::new(p as u32, s, m, None)
    }

    /// Text form `p^s:m:modulus=c0,...`, accepted by [`FieldSpec::from_str`].
    pub fn spec_string(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
        format!("{}^{}:{}:modulus={}", self.p, self.s, self.m, coeffs.join(","))
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// Size of the base field `F_q`.
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Number of elements of the top field.
    pub fn size(&self) -> u32 {
        self.size
    }
    /// `[F_{q^m} : F_p] = s·m`.
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn prim(&self) -> Elem {
        self.prim
    }
    /// `(q^m - 1) / (q - 1)`, the norm exponent.
    pub fn norm_exponent(&self) -> u64 {
        self.base_step as u64
    }

    /// All elements in code order, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    /// All elements in coordinate-lexicographic order (constant coordinate most significant).
    pub fn lex_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(move |i| Elem(self.reverse_digits(i)))
    }

    fn reverse_digits(&self, mut idx: u32) -> u32 {
        let mut code = 0;
        for _ in 0..self.degree {
            code = code * self.p + idx % self.p;
            idx /= self.p;
        }
        code
    }

    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut code = a.0;
        (0..self.degree)
            .map(|_| {
                let d = code % self.p;
                code /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() > self.degree {
            return Err(Error::Parse(format!(
                "element has {} digits, field has degree {}",
                digits.len(),
                self.degree
            )));
        }
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            if d >= self.p {
                return Err(Error::Parse(format!("digit {d} out of range for F_{}", self.p)));
            }
            code = code * self.p + d;
        }
        Ok(Elem(code))
    }

    /// The prime-field scalar `k mod p`.
    pub fn scalar(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let i = self.log[a.0 as usize];
        let j = self.log[b.0 as usize];
        let k = if j >= i { j - i } else { j + self.order - i };
        match self.zech[k as usize] {
            NO_LOG => Elem::ZERO,
            z => Elem(self.exp[(i + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        // -1 = prim^(order/2) in odd characteristic
        let k = self.log[a.0 as usize] + self.order / 2;
        Elem(self.exp[k as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((self.order - l) % self.order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let l = self.log[a.0 as usize] as u64;
        let k = (l * (e % self.order as u64)) % self.order as u64;
        Elem(self.exp[k as usize])
    }

    /// `a^e` for a possibly negative exponent.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// `prim^k` for any integer `k`.
    pub fn prim_pow(&self, k: i64) -> Elem {
        let k = k.rem_euclid(self.order as i64);
        Elem(self.exp[k as usize])
    }

    /// Discrete logarithm to base `prim`, `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Multiplicative order, `None` for zero.
    pub fn order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.order as u64;
        Some(n / gcd(l, n))
    }

    /// True iff `x^q = x`.
    pub fn is_in_base_field(&self, x: Elem) -> bool {
        self.pow(x, self.q as u64) == x
    }

    /// True iff `x ∈ F_q` and `x ≠ 0`.
    pub fn is_in_base_field_star(&self, x: Elem) -> bool {
        !x.is_zero() && self.is_in_base_field(x)
    }

    /// `N(x) = x^{(q^m-1)/(q-1)}`, landing in `F_q`.
    pub fn norm_to_base(&self, x: Elem) -> Elem {
        self.pow(x, self.base_step as u64)
    }

    /// True iff `a` is a `t`-th power, tested as `a^{(q^m-1)/gcd(t, q^m-1)} = 1`.
    pub fn kth_power_test(&self, a: Elem, t: u64) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::InvalidArgument("kth_power_test requires a nonzero element".into()));
        }
        if t == 0 {
            return Err(Error::InvalidArgument("t must be positive".into()));
        }
        let n = self.order as u64;
        Ok(self.pow(a, n / gcd(t, n)) == Elem::ONE)
    }

    /// Smallest (by code) `x` with `x^t = a`, found by exhaustive search.
    pub fn kth_root(&self, a: Elem, t: u64) -> Option<Elem> {
        self.elements().find(|&x| self.pow(x, t) == a)
    }

    /// Elements of the base field `F_q`, in code order.
    pub fn base_field_elements(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = std::iter::once(Elem::ZERO)
            .chain((0..self.q - 1).map(|k| Elem(self.exp[(k * self.base_step) as usize])))
            .collect();
        v.sort_unstable();
        v
    }

    /// A generator of `F_q^*`.
    pub fn base_generator(&self) -> Elem {
        Elem(self.exp[self.base_step as usize % self.order as usize])
    }

    /// The `F_q`-basis `1, β, …, β^{m-1}` of the top field, with `β = prim`.
    pub fn base_basis(&self) -> Vec<Elem> {
        (0..self.m as i64).map(|j| self.prim_pow(j)).collect()
    }

    /// Coordinates of `a` over `F_q` in [`base_basis`](Self::base_basis).
    pub fn base_coords(&self, a: Elem) -> Vec<Elem> {
        let n = self.degree;
        let s = self.s as usize;
        let digits = self.digits(a);
        let mut mixed = vec![0u32; n];
        for (r, out) in mixed.iter_mut().enumerate() {
            let row = &self.coord_inv[r * n..(r + 1) * n];
            let acc: u64 = row.iter().zip(&digits).map(|(&x, &d)| x as u64 * d as u64).sum();
            *out = (acc % self.p as u64) as u32;
        }
        let omega = self.base_generator();
        (0..self.m as usize)
            .map(|j| {
                (0..s).fold(Elem::ZERO, |acc, a| {
                    let term = self.mul(Elem(mixed[a + s * j]), self.pow(omega, a as u64));
                    self.add(acc, term)
                })
            })
            .collect()
    }

    /// Inverse of [`base_coords`](Self::base_coords).
    pub fn from_base_coords(&self, coords: &[Elem]) -> Elem {
        coords
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (j, &c)| self.add(acc, self.mul(c, self.prim_pow(j as i64))))
    }

    /// Comma-separated `F_p` digits, constant term first.
    pub fn format_elem(&self, a: Elem) -> String {
        let d: Vec<String> = self.digits(a).iter().map(u32::to_string).collect();
        d.join(",")
    }

    /// Parses `a^k` (a power of the primitive element), a digit list
    /// `d0,d1,...` optionally wrapped in brackets, or a signed integer scalar.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('a') {
            let k: i64 = match rest.trim().strip_prefix('^') {
                Some(e) => e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?,
                None if rest.trim().is_empty() => 1,
                None => return Err(Error::Parse(format!("bad element {t:?}"))),
            };
            return Ok(self.prim_pow(k));
        }
        let inner = t.trim_start_matches('[').trim_end_matches(']');
        if let Some(neg) = inner.strip_prefix('-') {
            let k: i64 = neg.trim().parse().map_err(|_| Error::Parse(format!("bad element {t:?}")))?;
            return Ok(self.scalar(-k));
        }
        let digits = inner
            .split(',')
            .map(|d| d.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad element {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        self.from_digits(&digits)
    }

    // construction helpers

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(Elem(a));
        let db = self.digits(Elem(b));
        let prod = fp::mul(&da, &db, self.p);
        let r = fp::rem(&prod, &self.modulus, self.p);
        let mut code = 0u32;
        for &d in r.iter().rev() {
            code = code * self.p + d;
        }
        code
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> Elem {
        let n = self.order as u64;
        if n == 1 {
            return Elem::ONE;
        }
        let factors = prime_factors(n);
        self.lex_elements()
            .filter(|e| !e.is_zero())
            .find(|e| factors.iter().all(|&f| self.slow_pow(e.0, n / f) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&mut self) {
        let order = self.order as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![NO_LOG; self.size as usize];
        let mut cur = 1u32;
        for k in 0..order {
            exp[k] = cur;
            log[cur as usize] = k as u32;
            cur = self.slow_mul(cur, self.prim.0);
        }
        debug_assert_eq!(cur, 1);
        for k in 0..order {
            exp[k + order] = exp[k];
        }
        let p = self.p;
        let zech = (0..order)
            .map(|k| {
                let c = exp[k];
                let d0 = c % p;
                let sum = c - d0 + (d0 + 1) % p;
                if sum == 0 {
                    NO_LOG
                } else {
                    log[sum as usize]
                }
            })
            .collect();
        self.exp = exp;
        self.log = log;
        self.zech = zech;
    }

    fn build_coordinates(&mut self) {
        let n = self.degree;
        let s = self.s as usize;
        let omega = self.base_generator();
        // column a + s*j holds the digits of ω^a β^j
        let mut mat = vec![0u32; n * n];
        for j in 0..self.m as usize {
            for a in 0..s {
                let e = self.mul(self.pow(omega, a as u64), self.prim_pow(j as i64));
                for (r, d) in self.digits(e).into_iter().enumerate() {
                    mat[r * n + a + s * j] = d;
                }
            }
        }
        self.coord_inv = fp::invert_matrix(&mat, n, self.p).expect("{ω^a β^j} is an F_p-basis");
    }
}

/// Lexicographically smallest monic irreducible of the given degree over `F_p`,
/// comparing coefficients from the constant term upward.
fn smallest_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let total = (p as u64).pow(degree as u32);
    for idx in 0..total {
        // the constant coefficient is the most significant digit of idx
        let mut c = vec![0u32; degree + 1];
        let mut rest = idx;
        for i in (0..degree).rev() {
            c[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        c[degree] = 1;
        if fp::is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, s)` with `n = p^s`, when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = prime_factors(n);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut s = 0;
    let mut r = n;
    while r % p == 0 {
        r /= p;
        s += 1;
    }
    Some((p, s))
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Dense polynomial and matrix arithmetic over `F_p` on raw digit vectors.
pub(crate) mod fp {
    pub fn inv(a: u32, p: u32) -> u32 {
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|v| v as u32).collect())
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p) as u64;
        let mut r = trim(a.to_vec());
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = c * mi as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Irreducibility over `F_p` via `gcd(f, x^{p^i} - x mod f) = 1` for `i ≤ deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let n = f.len() - 1;
        let x = vec![0, 1];
        let mut h = rem(&x, &f, p);
        for _ in 1..=n / 2 {
            // h <- h^p mod f
            let mut acc = vec![1u32];
            let mut base = h.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = rem(&mul(&acc, &base, p), &f, p);
                }
                base = rem(&mul(&base, &base, p), &f, p);
                e >>= 1;
            }
            h = acc;
            let g = gcd(&f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Gauss-Jordan inverse of an `n × n` row-major matrix over `F_p`.
    pub fn invert_matrix(mat: &[u32], n: usize, p: u32) -> Option<Vec<u32>> {
        let w = 2 * n;
        let mut a = vec![0u32; n * w];
        for r in 0..n {
            a[r * w..r * w + n].copy_from_slice(&mat[r * n..(r + 1) * n]);
            a[r * w + n + r] = 1;
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * w + col] != 0)?;
            for k in 0..w {
                a.swap(col * w + k, piv * w + k);
            }
            let iv = inv(a[col * w + col], p) as u64;
            for k in 0..w {
                a[col * w + k] = (a[col * w + k] as u64 * iv % p as u64) as u32;
            }
            for r in 0..n {
                let c = a[r * w + col] as u64;
                if r == col || c == 0 {
                    continue;
                }
                for k in 0..w {
                    let sub = c * a[col * w + k] as u64 % p as u64;
                    a[r * w + k] = ((a[r * w + k] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        Some((0..n).flat_map(|r| a[r * w + n..(r + 1) * w].to_vec()).collect())
    }
}
