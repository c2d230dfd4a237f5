use std::collections::HashSet;
use std::sync::Arc;

use goppa_core::bch::{cyclotomic_cosets, goppa_bch_map, BchSpec};
use goppa_core::criterion::{check_support, ratios, SupportCheck};
use goppa_core::goppa::{build_code, full_support, membership_congruence, GoppaSpec};
use goppa_core::linalg::{min_distance, DistanceOptions, MinDistance};
use goppa_core::rng::Lcg64;
use goppa_core::{Elem, FieldCtx, LinearCode, Matrix, Poly, Provenance};
use proptest::prelude::*;

fn field(q: u32, m: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::for_prime_power(q, m).unwrap())
}

/// Every word of `F_q^n`, in reverse-lex order of coordinate indices.
fn all_words(f: &FieldCtx, n: usize) -> Vec<Vec<Elem>> {
    let base = f.base_field_elements();
    let q = base.len();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut w = vec![Elem::ZERO; n];
            for x in w.iter_mut().rev() {
                *x = base[idx % q];
                idx /= q;
            }
            w
        })
        .collect()
}

/// Minimum distance and codeword count by scanning all of `F_q^n`.
fn brute_force(code: &LinearCode) -> (usize, usize) {
    let f = code.field();
    let mut count = 0;
    let mut best = usize::MAX;
    for w in all_words(f, code.n()) {
        if code.is_codeword(&w) {
            count += 1;
            let wt = w.iter().filter(|c| !c.is_zero()).count();
            if wt > 0 {
                best = best.min(wt);
            }
        }
    }
    (best, count)
}

#[test]
fn min_distance_matches_full_scan() {
    let f = field(3, 2);
    let mut rng = Lcg64::new(7);
    for t in 1..=3 {
        for _ in 0..6 {
            let coeffs: Vec<Elem> = (0..t).map(|_| Elem(rng.below(9))).chain([Elem::ONE]).collect();
            let g = Poly::new(coeffs);
            let support = full_support(&f, &g).unwrap();
            let support: Vec<Elem> = support.into_iter().take(8).collect();
            let spec = GoppaSpec::new(f.clone(), support, g).unwrap();
            let code = build_code(&spec);
            let (d, count) = brute_force(&code);
            assert_eq!(count, 3usize.pow(code.k() as u32));
            let opts = DistanceOptions { early_exit: false, ..Default::default() };
            match min_distance(&code, &opts) {
                MinDistance::Exact { d: got } => assert_eq!(got, d),
                MinDistance::NoCodewords => assert_eq!(count, 1),
                other => panic!("unexpected {other:?}"),
            }
            assert!(code.k() == 0 || d >= t + 1);
        }
    }
}

#[test]
fn early_exit_and_budget() {
    let f = field(3, 2);
    let g = Poly::monomial(Elem::ONE, 2).add(&Poly::constant(f.prim_pow(2)), &f);
    let code = build_code(&GoppaSpec::with_full_support(f.clone(), g).unwrap());
    assert_eq!(min_distance(&code, &DistanceOptions::default()), MinDistance::Exact { d: 3 });
    let tight = DistanceOptions { budget: 26, witness_weight: Some(3), ..Default::default() };
    assert_eq!(min_distance(&code, &tight), MinDistance::Interval { lo: 3, hi: 3 });
    let none = DistanceOptions { budget: 1, ..Default::default() };
    assert_eq!(min_distance(&code, &none), MinDistance::Interval { lo: 3, hi: code.n() - code.k() + 1 });
}

#[test]
fn designed_bound_holds_for_bch() {
    for (q, m, delta) in [(2, 4, 5), (3, 2, 4), (2, 3, 3), (4, 2, 4)] {
        let spec = BchSpec::new(field(q, m), delta).unwrap();
        let code = spec.build().unwrap();
        let opts = DistanceOptions { early_exit: false, ..Default::default() };
        let d = min_distance(&code, &opts).certified().unwrap();
        assert!(d >= spec.bose_distance(), "q={q} m={m} δ={delta}");
    }
}

#[test]
fn bch_dimension_from_cosets_equals_rank() {
    for (q, m) in [(2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2)] {
        let f = field(q, m);
        let n = f.size() as usize - 1;
        let cosets = cyclotomic_cosets(q as u64, n as u64).unwrap();
        for delta in 2..=n {
            let spec = BchSpec::new(f.clone(), delta).unwrap();
            let rank = spec.parity_check_extension().subfield_expand(&f).rank(&f);
            assert_eq!(n - rank, spec.dimension());
            let hit: usize =
                cosets.iter().filter(|c| c.iter().any(|&i| (1..delta as u64).contains(&i))).map(Vec::len).sum();
            assert_eq!(spec.defining_set().len(), hit);
        }
    }
}

#[test]
fn goppa_monomial_maps_onto_bch() {
    for (q, m, t) in [(3, 2, 2), (2, 3, 2), (2, 4, 4), (4, 2, 3)] {
        let f = field(q, m);
        let n = f.size() as usize - 1;
        let support: Vec<Elem> = (0..n as i64).map(|i| f.prim_pow(i)).collect();
        let goppa = GoppaSpec::new(f.clone(), support, Poly::monomial(Elem::ONE, t)).unwrap();
        let gcode = build_code(&goppa);
        let bch = BchSpec::new(f.clone(), t + 1).unwrap();
        let bcode = bch.build().unwrap();
        assert_eq!(gcode.k(), bcode.k());
        let mapped: HashSet<Vec<Elem>> = codewords(&gcode)
            .into_iter()
            .map(|w| {
                let b = goppa_bch_map(&goppa, &w).unwrap();
                assert!(bch.is_codeword(&b) && bcode.is_codeword(&b));
                b
            })
            .collect();
        let direct: HashSet<Vec<Elem>> = codewords(&bcode).into_iter().collect();
        assert_eq!(mapped, direct, "q={q} m={m} t={t}");
    }
}

fn codewords(code: &LinearCode) -> Vec<Vec<Elem>> {
    let f = code.field();
    let gen = code.generator().unwrap();
    all_words(f, code.k())
        .into_iter()
        .map(|msg| {
            let mut w = vec![Elem::ZERO; code.n()];
            for (row, &c) in gen.row_vecs().zip(&msg) {
                for (x, &g) in w.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(c, g));
                }
            }
            w
        })
        .collect()
}

#[test]
fn bch_map_rejects_other_polynomials() {
    let f = field(3, 2);
    let g = Poly::monomial(Elem::ONE, 2).add(&Poly::one(), &f);
    let spec = GoppaSpec::with_full_support(f.clone(), g).unwrap();
    assert!(goppa_bch_map(&spec, &vec![Elem::ZERO; spec.n()]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_keeps_the_base_field_kernel(raw in prop::collection::vec(0u32..27, 10), word in prop::collection::vec(0u32..3, 5)) {
        let f = field(3, 3);
        let h = Matrix::new(2, 5, raw.into_iter().map(Elem).collect());
        let base = f.base_field_elements();
        let c: Vec<Elem> = word.iter().map(|&i| base[i as usize]).collect();
        let big = h.mul_vec(&c, &f).iter().all(|x| x.is_zero());
        let small = h.subfield_expand(&f).mul_vec(&c, &f).iter().all(|x| x.is_zero());
        prop_assert_eq!(big, small);
        let code = LinearCode::from_parity(f.clone(), &h.subfield_expand(&f), 1, Provenance::Goppa { degree: 1 });
        for row in code.generator().unwrap().row_vecs() {
            prop_assert!(h.mul_vec(row, &f).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn congruence_agrees_with_syndrome(seed in any::<u64>(), t in 1usize..4) {
        let f = field(3, 2);
        let mut rng = Lcg64::new(seed);
        let coeffs: Vec<Elem> = (0..t).map(|_| Elem(rng.below(9))).chain([Elem::ONE]).collect();
        let g = Poly::new(coeffs);
        let spec = GoppaSpec::with_full_support(f.clone(), g).unwrap();
        let code = build_code(&spec);
        let base = f.base_field_elements();
        let random: Vec<Elem> = (0..spec.n()).map(|_| base[rng.below(3) as usize]).collect();
        prop_assert_eq!(membership_congruence(&spec, &random).unwrap(), code.is_codeword(&random));
        if let Some(gen) = code.generator() {
            let mut w = vec![Elem::ZERO; spec.n()];
            for row in gen.row_vecs() {
                let c = base[rng.below(3) as usize];
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            prop_assert!(membership_congruence(&spec, &w).unwrap());
        }
    }

    #[test]
    fn ratios_ignore_scaling(seed in any::<u64>(), scale in 1u32..25) {
        let f = field(5, 2);
        let mut rng = Lcg64::new(seed);
        let g = Poly::new(vec![Elem(rng.below(25)), Elem(rng.below(25)), Elem::ONE]);
        let pts: Vec<Elem> = rng.distinct(3, 25).into_iter().map(Elem).collect();
        prop_assume!(pts.iter().all(|&a| !g.eval(a, &f).is_zero()));
        let scaled = g.scale(Elem(scale), &f);
        prop_assert_eq!(ratios(&f, &g, &pts).unwrap(), ratios(&f, &scaled, &pts).unwrap());
        let a = check_support(&f, &g, &pts).unwrap();
        let b = check_support(&f, &scaled, &pts).unwrap();
        prop_assert_eq!(matches!(a, SupportCheck::Pass(_)), matches!(b, SupportCheck::Pass(_)));
    }

    #[test]
    fn passing_supports_give_codewords(seed in any::<u64>()) {
        let f = field(3, 2);
        let mut rng = Lcg64::new(seed);
        let g = Poly::new(vec![Elem(rng.below(9)), Elem(rng.below(9)), Elem::ONE]);
        let spec = GoppaSpec::with_full_support(f.clone(), g.clone()).unwrap();
        prop_assume!(spec.n() >= 3);
        let idx = rng.distinct(3, spec.n() as u32);
        let pts: Vec<Elem> = idx.iter().map(|&i| spec.support()[i as usize]).collect();
        if let SupportCheck::Pass(w) = check_support(&f, &g, &pts).unwrap() {
            let word = w.embed(spec.support()).unwrap();
            prop_assert!(membership_congruence(&spec, &word).unwrap());
            prop_assert_eq!(word.iter().filter(|c| !c.is_zero()).count(), 3);
        }
    }
}
