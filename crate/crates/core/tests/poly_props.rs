use std::collections::HashSet;

use goppa_core::field::{Elem, FieldCtx};
use goppa_core::poly::{norm_poly_eval, norm_poly_expand, Poly, QuotientRing};
use proptest::prelude::*;

fn f9() -> FieldCtx {
    FieldCtx::new(3, 1, 2, None).unwrap()
}

fn poly_from(f: &FieldCtx, raw: &[u32]) -> Poly {
    Poly::new(raw.iter().map(|&r| Elem(r % f.size())).collect())
}

fn monic(p: u32, d: usize, mut idx: u64) -> Poly {
    let mut c = vec![Elem::ZERO; d + 1];
    for x in c.iter_mut().take(d) {
        *x = Elem((idx % p as u64) as u32);
        idx /= p as u64;
    }
    c[d] = Elem::ONE;
    Poly::new(c)
}

/// Degree-`d` monic polynomials over `F_p` that factor, built as products.
fn reducible_set(p: u32, d: usize, f: &FieldCtx) -> HashSet<Vec<Elem>> {
    let mut out = HashSet::new();
    for a in 1..=d / 2 {
        for i in 0..(p as u64).pow(a as u32) {
            for j in 0..(p as u64).pow((d - a) as u32) {
                let prod = monic(p, a, i).mul(&monic(p, d - a, j), f);
                out.insert(prod.coeffs().to_vec());
            }
        }
    }
    out
}

#[test]
fn irreducibility_matches_products() {
    for (p, max_deg) in [(2u32, 6usize), (3, 4), (5, 3)] {
        let f = FieldCtx::prime(p).unwrap();
        for d in 1..=max_deg {
            let reducible = reducible_set(p, d, &f);
            for idx in 0..(p as u64).pow(d as u32) {
                let g = monic(p, d, idx);
                let irr = g.is_irreducible_over_prime(&f).unwrap();
                assert_eq!(irr, !reducible.contains(g.coeffs()), "p={p} {}", g.to_shorthand(&f));
            }
        }
    }
}

#[test]
fn irreducible_counts() {
    // number of monic irreducibles of degree d over F_2 and F_3
    let expect: &[(u32, &[u64])] = &[(2, &[2, 1, 2, 3, 6, 9]), (3, &[3, 3, 8, 18])];
    for &(p, counts) in expect {
        let f = FieldCtx::prime(p).unwrap();
        for (d, &n) in counts.iter().enumerate() {
            let d = d + 1;
            let got = (0..(p as u64).pow(d as u32))
                .filter(|&i| monic(p, d, i).is_irreducible_over_prime(&f).unwrap())
                .count() as u64;
            assert_eq!(got, n, "p={p} d={d}");
        }
    }
}

#[test]
fn parse_forms() {
    let f = f9();
    let a = Poly::parse("x^2 + 1", &f).unwrap();
    assert_eq!(a, Poly::from_ints(&[1, 0, 1], &f));
    assert_eq!(Poly::parse("1;0;1", &f).unwrap(), a);
    assert_eq!(Poly::parse("1,0,1", &f).unwrap(), a);
    assert_eq!(Poly::parse("2x^3 - x + a^5", &f).unwrap(), Poly::new(vec![f.prim_pow(5), f.scalar(-1), Elem::ZERO, f.scalar(2)]));
    assert_eq!(Poly::parse("[0,1]*x + [1,1]", &f).unwrap(), Poly::new(vec![f.from_digits(&[1, 1]).unwrap(), f.from_digits(&[0, 1]).unwrap()]));
    assert!(Poly::parse("", &f).is_err());
    assert!(Poly::parse("x^ + 1", &f).is_err());
    assert!(Poly::parse("x +", &f).is_err());
}

#[test]
fn quotient_inverse_needs_coprime() {
    let f = f9();
    let ring = QuotientRing::new(Poly::from_ints(&[0, 0, 1], &f)).unwrap();
    assert!(ring.inverse_mod(&Poly::x(), &f).is_err());
    assert!(QuotientRing::new(Poly::one()).is_err());
    assert!(QuotientRing::new(Poly::zero()).is_err());
}

fn small_poly() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..9, 0..7)
}

proptest! {
    #[test]
    fn eval_is_a_ring_map(a in small_poly(), b in small_poly(), x in 0u32..9) {
        let f = f9();
        let (a, b, x) = (poly_from(&f, &a), poly_from(&f, &b), Elem(x));
        prop_assert_eq!(a.mul(&b, &f).eval(x, &f), f.mul(a.eval(x, &f), b.eval(x, &f)));
        prop_assert_eq!(a.add(&b, &f).eval(x, &f), f.add(a.eval(x, &f), b.eval(x, &f)));
        prop_assert_eq!(a.pow(3, &f).eval(x, &f), f.pow(a.eval(x, &f), 3));
    }

    #[test]
    fn product_rule(a in small_poly(), b in small_poly()) {
        let f = f9();
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        let lhs = a.mul(&b, &f).derivative(&f);
        let rhs = a.derivative(&f).mul(&b, &f).add(&a.mul(&b.derivative(&f), &f), &f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_identity(a in small_poly(), b in small_poly()) {
        let f = f9();
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b, &f).unwrap();
        prop_assert_eq!(q.mul(&b, &f).add(&r, &f), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        prop_assert_eq!(a.mul(&b, &f).exact_div(&b, &f).unwrap(), a);
    }

    #[test]
    fn roots_of_products(a in small_poly(), b in small_poly()) {
        let f = f9();
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ra: HashSet<Elem> = a.roots_in_field(&f).unwrap().into_iter().collect();
        let rb: HashSet<Elem> = b.roots_in_field(&f).unwrap().into_iter().collect();
        let rab: HashSet<Elem> = a.mul(&b, &f).roots_in_field(&f).unwrap().into_iter().collect();
        prop_assert!(ra.is_subset(&rab));
        prop_assert_eq!(rab, ra.union(&rb).copied().collect::<HashSet<_>>());
    }

    #[test]
    fn from_roots_vanishes_exactly_there(raw in prop::collection::hash_set(0u32..9, 0..6)) {
        let f = f9();
        let roots: Vec<Elem> = raw.into_iter().map(Elem).collect();
        let p = Poly::from_roots(&roots, &f);
        prop_assert_eq!(p.degree(), Some(roots.len()));
        let mut found = p.roots_in_field(&f).unwrap();
        let mut sorted = roots.clone();
        found.sort_unstable();
        sorted.sort_unstable();
        prop_assert_eq!(found, sorted);
        prop_assert!(p.is_squarefree(&f));
        if !roots.is_empty() {
            prop_assert!(!p.mul(&Poly::linear(roots[0], &f), &f).is_squarefree(&f));
        }
    }

    #[test]
    fn text_round_trip(a in small_poly()) {
        let f = f9();
        let a = poly_from(&f, &a);
        prop_assert_eq!(Poly::parse(&a.format(&f), &f).unwrap(), a.clone());
        prop_assert_eq!(Poly::parse(&a.to_shorthand(&f), &f).unwrap(), a);
    }

    #[test]
    fn quotient_inverses(a in small_poly(), g in prop::collection::vec(0u32..9, 2..5)) {
        let f = f9();
        let (a, g) = (poly_from(&f, &a), poly_from(&f, &g));
        prop_assume!(g.degree().unwrap_or(0) >= 1);
        let ring = QuotientRing::new(g.clone()).unwrap();
        match ring.inverse_mod(&a, &f) {
            Ok(inv) => prop_assert_eq!(ring.mul(&a, &inv, &f), Poly::one()),
            Err(_) => prop_assert!(a.gcd(&g, &f).degree() != Some(0)),
        }
    }

    #[test]
    fn norm_expansion_matches_evaluation(g in prop::collection::vec(0u32..9, 2..4), x in 0u32..9) {
        let f = f9();
        let g = poly_from(&f, &g);
        prop_assume!(g.degree().unwrap_or(0) >= 1);
        let n = norm_poly_expand(&g, &f).unwrap();
        prop_assert_eq!(n.eval(Elem(x), &f), norm_poly_eval(&g, Elem(x), &f));
        prop_assert!(f.is_in_base_field(n.eval(Elem(x), &f)));
    }
}
