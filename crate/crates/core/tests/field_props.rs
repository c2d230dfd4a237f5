use goppa_core::field::{is_prime, Elem, FieldCtx};
use proptest::prelude::*;

const SMALL: &[(u32, u32, u32)] = &[(2, 1, 1), (2, 1, 4), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 2, 2), (7, 1, 1), (2, 3, 2), (3, 1, 3)];

fn ctx(i: usize) -> FieldCtx {
    let (p, s, m) = SMALL[i % SMALL.len()];
    FieldCtx::new(p, s, m, None).unwrap()
}

fn elem(f: &FieldCtx, raw: u32) -> Elem {
    Elem(raw % f.size())
}

/// Plain `F_p[x]` helpers, independent of the library's arithmetic.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    let inv_lead = (1..p).find(|&x| x * m[dm] % p == 1).unwrap();
    while a.len() > dm {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let c = top * inv_lead % p;
        let shift = a.len() - dm;
        for (i, &mi) in m[..dm].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * mi % p) % p;
        }
    }
    a
}

fn monic_polys(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..(p as u64).pow(d as u32)).map(move |mut idx| {
        let mut c = vec![0u32; d + 1];
        for x in c.iter_mut().take(d) {
            *x = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        c[d] = 1;
        c
    })
}

fn trial_irreducible(c: &[u32], p: u32) -> bool {
    let d = c.len() - 1;
    (1..=d / 2).all(|e| monic_polys(p, e).all(|g| poly_rem(c, &g, p).iter().any(|&x| x != 0)))
}

#[test]
fn modulus_is_lex_smallest_irreducible() {
    for &(p, s, m) in SMALL {
        let f = FieldCtx::new(p, s, m, None).unwrap();
        let d = (s * m) as usize;
        // Vec ordering compares the constant term first
        let best = monic_polys(p, d).filter(|c| trial_irreducible(c, p)).min().unwrap();
        assert_eq!(f.modulus(), &best[..], "p={p} degree {d}");
    }
}

#[test]
fn primitive_is_first_full_order_element() {
    for &(p, s, m) in SMALL {
        let f = FieldCtx::new(p, s, m, None).unwrap();
        let n = f.size() - 1;
        let order = |a: Elem| {
            let mut x = a;
            let mut k = 1;
            while x != Elem::ONE {
                x = f.mul(x, a);
                k += 1;
            }
            k
        };
        let first = f.lex_elements().filter(|a| !a.is_zero()).find(|&a| order(a) == n).unwrap();
        assert_eq!(f.prim(), first);
    }
}

#[test]
fn subfield_sizes() {
    for &(p, s, m) in SMALL {
        let f = FieldCtx::new(p, s, m, None).unwrap();
        let n = s * m;
        for d in (1..=n).filter(|d| n % d == 0) {
            let pd = (p as u64).pow(d);
            let count = f.elements().filter(|&a| f.pow(a, pd) == a).count() as u64;
            assert_eq!(count, pd);
        }
        assert_eq!(f.base_field_elements().len() as u32, f.q());
    }
}

#[test]
fn norm_is_onto_base_units() {
    for &(p, s, m) in SMALL {
        let f = FieldCtx::new(p, s, m, None).unwrap();
        let mut hits = vec![0u32; f.size() as usize];
        for a in f.elements().filter(|a| !a.is_zero()) {
            let n = f.norm_to_base(a);
            assert!(f.is_in_base_field_star(n));
            hits[n.0 as usize] += 1;
        }
        let fibre = f.norm_exponent() as u32;
        for b in f.base_field_elements().into_iter().filter(|b| !b.is_zero()) {
            assert_eq!(hits[b.0 as usize], fibre);
        }
    }
}

#[test]
fn kth_power_test_matches_search() {
    for &(p, s, m) in SMALL {
        let f = FieldCtx::new(p, s, m, None).unwrap();
        for t in 1..=6u64 {
            let powers: Vec<bool> = {
                let mut v = vec![false; f.size() as usize];
                for x in f.elements() {
                    v[f.pow(x, t).0 as usize] = true;
                }
                v
            };
            for a in f.elements().filter(|a| !a.is_zero()) {
                assert_eq!(f.kth_power_test(a, t).unwrap(), powers[a.0 as usize], "t={t}");
                assert_eq!(f.kth_root(a, t).is_some(), powers[a.0 as usize]);
            }
        }
    }
}

#[test]
fn bad_constructions() {
    assert!(FieldCtx::new(4, 1, 2, None).is_err());
    assert!(FieldCtx::new(2, 1, 21, None).is_err());
    assert!(FieldCtx::new(2, 1, 2, Some(vec![1, 0, 1])).is_err());
    assert!(FieldCtx::new(3, 1, 2, Some(vec![1, 0, 1])).is_ok());
    assert!(FieldCtx::for_prime_power(6, 2).is_err());
    assert!(is_prime(65537) && !is_prime(1));
}

proptest! {
    #[test]
    fn ring_axioms(i in 0usize..9, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = ctx(i);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.mul(f.div(b, a).unwrap(), a), b);
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn frobenius_is_additive(i in 0usize..9, a in any::<u32>(), b in any::<u32>()) {
        let f = ctx(i);
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(a), f.pow(a, f.p() as u64));
    }

    #[test]
    fn norm_is_multiplicative(i in 0usize..9, a in any::<u32>(), b in any::<u32>()) {
        let f = ctx(i);
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(f.norm_to_base(f.mul(a, b)), f.mul(f.norm_to_base(a), f.norm_to_base(b)));
    }

    #[test]
    fn base_coordinates_round_trip(i in 0usize..9, a in any::<u32>(), b in any::<u32>(), k in any::<u32>()) {
        let f = ctx(i);
        let (a, b) = (elem(&f, a), elem(&f, b));
        let base = f.base_field_elements();
        let lam = base[k as usize % base.len()];
        let ca = f.base_coords(a);
        prop_assert_eq!(ca.len(), f.m() as usize);
        prop_assert!(ca.iter().all(|&c| f.is_in_base_field(c)));
        prop_assert_eq!(f.from_base_coords(&ca), a);
        let lin = f.base_coords(f.add(f.mul(lam, a), b));
        let expect: Vec<Elem> = ca.iter().zip(f.base_coords(b)).map(|(&x, y)| f.add(f.mul(lam, x), y)).collect();
        prop_assert_eq!(lin, expect);
    }

    #[test]
    fn logs_and_powers_agree(i in 0usize..9, a in any::<u32>(), e in 0i64..100) {
        let f = ctx(i);
        let a = elem(&f, a);
        if let Some(l) = f.log(a) {
            prop_assert_eq!(f.prim_pow(l as i64), a);
            prop_assert_eq!(f.pow(a, e as u64), f.prim_pow(l as i64 * e));
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(f.parse_elem(&f.format_elem(a)).unwrap(), a);
    }
}
