use num_complex::Complex64;
use proptest::prelude::*;
use qwalk::exactfield::RealRad;
use qwalk::graphs::Family;
use qwalk::spectra::Spectrum;
use qwalk::statetransfer::{decide_fr, decide_pgfr, fr_witness_is_valid};
use qwalk::walk::Walk;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Unitary), Just(Family::QuadraticUnitary)]
}

fn instance() -> impl Strategy<Value = (Family, u64, usize, usize, f64, f64)> {
    (family(), 2u64..=50).prop_flat_map(|(f, n)| {
        (
            Just(f),
            Just(n),
            0..n as usize,
            0..n as usize,
            0.001f64..=100.0,
            0.001f64..=100.0,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unitarity((f, n, a, _b, t, _s) in instance()) {
        let walk = Walk::new(&Spectrum::of(f, n).unwrap());
        let mass: f64 = walk.column(a, t).unwrap().iter().map(Complex64::norm_sqr).sum();
        prop_assert!((mass - 1.0).abs() < 1e-10);
    }

    #[test]
    fn symmetry((f, n, a, b, t, _s) in instance()) {
        let walk = Walk::new(&Spectrum::of(f, n).unwrap());
        let d = walk.amplitude(a, b, t).unwrap() - walk.amplitude(b, a, t).unwrap();
        prop_assert!(d.norm() < 1e-10);
    }

    #[test]
    fn group_law((f, n, a, b, t, s) in instance()) {
        let walk = Walk::new(&Spectrum::of(f, n).unwrap());
        let composed: Complex64 = (0..n as usize)
            .map(|v| walk.amplitude(a, v, s).unwrap() * walk.amplitude(v, b, t).unwrap())
            .sum();
        prop_assert!((composed - walk.amplitude(a, b, s + t).unwrap()).norm() <= 1e-8);
    }

    #[test]
    fn spectrum_invariants(f in family(), n in 2u64..=120) {
        let spec = Spectrum::of(f, n).unwrap();
        let degree = f.graph(n).unwrap().degree() as i64;
        prop_assert_eq!(spec.degree(), &RealRad::from_integer(degree));
        let n = n as usize;
        for j in 1..n {
            prop_assert_eq!(spec.get(j), spec.get(n - j));
        }
        let trace: RealRad = spec.values().iter().cloned().sum();
        prop_assert!(trace.is_zero());
    }

    #[test]
    fn fr_report_invariants((f, n, a, b, t, _s) in instance()) {
        prop_assume!(a != b);
        let r = Walk::new(&Spectrum::of(f, n).unwrap()).fr_report(a, b, t).unwrap();
        prop_assert!(r.alpha.norm_sqr() + r.beta.norm_sqr() <= 1.0 + 1e-9);
        prop_assert!(r.residual >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fr_witness_is_consistent(f in family(), half in 1u64..=40) {
        let n = 2 * half;
        let spec = Spectrum::of(f, n).unwrap();
        let fr = decide_fr(&spec);
        if fr.holds {
            let w = fr.witness_t_over_2pi.as_ref().unwrap();
            prop_assert!(fr_witness_is_valid(&spec, w));
            let r = Walk::new(&spec).fr_report(0, half as usize, fr.witness_t().unwrap()).unwrap();
            prop_assert!(r.residual <= 1e-8);
            prop_assert!(r.beta.norm() > 1e-9);
            prop_assert!(decide_pgfr(&spec).holds);
        }
    }
}
