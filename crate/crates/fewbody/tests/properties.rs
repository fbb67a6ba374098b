//! Property tests over the system and threshold layers.

use fewbody::systems::{canonicalize, from_simplex, to_simplex, ParticleSystem, SimplexPoint};
use fewbody::thresholds::pair_energy;
use proptest::prelude::*;

fn charges_3() -> impl Strategy<Value = [f64; 3]> {
    // one minority sign, magnitudes in a sane range
    (0.2..3.0f64, 0.2..3.0f64, 0.2..3.0f64, 0..3usize).prop_map(|(a, b, c, minority)| {
        let mut q = [a, b, c];
        for (k, qk) in q.iter_mut().enumerate() {
            if k != minority {
                *qk = -*qk;
            }
        }
        q
    })
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(
        x in prop::array::uniform3(1e-3..10.0f64),
        q in charges_3(),
    ) {
        let sys = ParticleSystem::new(&x, &q).unwrap();
        let once = canonicalize(&sys).unwrap().system;
        let twice = canonicalize(&once).unwrap();
        prop_assert_eq!(&once, &twice.system);
        prop_assert_eq!(twice.permutation, vec![0, 1, 2]);
        prop_assert!(!twice.conjugated);
    }

    #[test]
    fn canonical_form_orders_masses_and_signs(
        x in prop::array::uniform3(1e-3..10.0f64),
        q in charges_3(),
    ) {
        let sys = ParticleSystem::new(&x, &q).unwrap();
        let c = canonicalize(&sys).unwrap().system;
        prop_assert!(c.q()[0] > 0.0);
        prop_assert!(c.q()[1] < 0.0 && c.q()[2] < 0.0);
        prop_assert!(c.x()[1] <= c.x()[2]);
    }

    #[test]
    fn simplex_round_trip(
        u in 0.0..1.0f64,
        v in 0.0..1.0f64,
    ) {
        let (lo, hi) = (u.min(v), u.max(v));
        let p = SimplexPoint::new(lo, hi - lo, 1.0 - hi).unwrap();
        if p.alpha().iter().sum::<f64>() > 0.0 {
            let sys = from_simplex(&p, &[1.0, -1.0, -1.0]).unwrap();
            let back = to_simplex(&sys).unwrap();
            for k in 0..3 {
                prop_assert!((back.alpha()[k] - p.alpha()[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pair_energy_symmetry_and_scaling(
        xi in 1e-3..10.0f64,
        xj in 1e-3..10.0f64,
        qi in 0.1..3.0f64,
        qj in 0.1..3.0f64,
        c in 0.1..5.0f64,
    ) {
        let e = pair_energy(xi, xj, qi, -qj).unwrap();
        prop_assert_eq!(e, pair_energy(xj, xi, -qj, qi).unwrap());
        // charge rescaling by c scales energies by c^4
        let ec = pair_energy(xi, xj, c * qi, -c * qj).unwrap();
        prop_assert!((ec - e * c.powi(4)).abs() <= 1e-10 * ec.abs().max(1.0));
        // mass rescaling x -> x/c scales energies by c
        let em = pair_energy(xi / c, xj / c, qi, -qj).unwrap();
        prop_assert!((em - e * c).abs() <= 1e-10 * em.abs().max(1.0));
        // monotone: growing an inverse mass never deepens the pair
        let eg = pair_energy(xi * 1.5, xj, qi, -qj).unwrap();
        prop_assert!(eg >= e);
    }
}
