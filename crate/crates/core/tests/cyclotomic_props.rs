use charcheck::arith::{gcd, units_mod};
use charcheck::conjectures::{lemma2_basis_sweep, tracelemma_sweep};
use charcheck::cyclotomic::{trace_to_subfield, CycInt, FqReduction, GaloisSubgroup};
use proptest::prelude::*;

// all divide 120, so every product stays inside ℚ(ζ₁₂₀)
const MODULI: &[u64] = &[1, 3, 4, 5, 8, 12, 15, 20, 24, 40];

fn cyc() -> impl Strategy<Value = CycInt> {
    prop::sample::select(MODULI).prop_flat_map(|n| {
        prop::collection::vec(-4i64..5, n as usize).prop_map(move |m| CycInt::from_root_multiplicities(n, &m))
    })
}

fn unit_mod(n: u64) -> impl Strategy<Value = i64> {
    (0..1000i64).prop_filter_map("unit", move |k| (gcd(k as u64, n) == 1).then_some(k))
}

proptest! {
    #[test]
    fn ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn galois_is_a_ring_automorphism(a in cyc(), b in cyc(), k in unit_mod(120), l in unit_mod(120)) {
        let s = |x: &CycInt, k: i64| x.galois_in(k, 120).unwrap();
        prop_assert_eq!(s(&a.mul(&b), k), s(&a, k).mul(&s(&b, k)));
        prop_assert_eq!(s(&a.add(&b), k), s(&a, k).add(&s(&b, k)));
        prop_assert_eq!(s(&s(&a, l), k), s(&a, k * l));
        prop_assert_eq!(s(&a, -1), a.conj());
    }

    #[test]
    fn reduction_is_a_ring_map(a in cyc(), b in cyc(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let red = FqReduction::new(p, 120);
        let f = red.field();
        let (ra, rb) = (red.reduce(&a).unwrap(), red.reduce(&b).unwrap());
        prop_assert_eq!(red.reduce(&a.mul(&b)).unwrap(), f.mul(&ra, &rb));
        prop_assert_eq!(red.reduce(&a.add(&b)).unwrap(), f.add(&ra, &rb));
        prop_assert_eq!(red.reduce(&CycInt::from_int(p as i64)).unwrap(), f.zero());
    }

    #[test]
    fn traces_are_fixed_by_the_base_group(a in cyc(), m in prop::sample::select(vec![1u64, 2, 3, 4, 6, 12])) {
        let n = 120;
        let f_fix = GaloisSubgroup::fixing_cyclotomic(n, m);
        let tr = trace_to_subfield(&a, &f_fix, &GaloisSubgroup::trivial(n)).unwrap();
        for &k in f_fix.residues() {
            prop_assert_eq!(tr.galois_in(k as i64, n).unwrap(), tr.clone());
        }
    }
}

#[test]
fn absolute_trace_formula() {
    // tr(ζ_m) over ℚ(ζₙ) is φ(n)/φ(m)·μ(m)
    use charcheck::arith::{euler_phi, moebius};
    for n in 1..=36u64 {
        for m in (1..=n).filter(|m| n % m == 0) {
            let tr = trace_to_subfield(&CycInt::root(n, n / m), &GaloisSubgroup::full(n), &GaloisSubgroup::trivial(n))
                .unwrap();
            let want = (euler_phi(n) / euler_phi(m)) as i64 * moebius(m);
            assert_eq!(tr, CycInt::from_int(want), "n={n} m={m}");
        }
    }
    assert_eq!(units_mod(8), vec![1, 3, 5, 7]);
}

#[test]
fn lemma2_power_basis_up_to_60() {
    let s = lemma2_basis_sweep(60).unwrap();
    assert!(s.failures.is_empty(), "{:?}", s.failures);
    assert_eq!(s.cases, (1..=60).map(charcheck::arith::euler_phi).sum::<u64>());
}

#[test]
fn tracelemma_towers_up_to_64() {
    let s = tracelemma_sweep(64).unwrap();
    assert!(s.failures.is_empty(), "{:?}", s.failures);
    assert!(s.cases > 1000, "{}", s.cases);
}
