//! Text format and move scripts survive a write and a read.

use gauss_manifold::corpus::{random_diagram, Limits};
use gauss_manifold::{format_script, parse, parse_script, serialize};
use gauss_manifold_core::{
    apply_script, canonicalize_decorated, normalize_colors, Decoration, GaussDiagram, MoveSpec,
    Sign,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diagram(seed: u64) -> (GaussDiagram, Decoration) {
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), Limits::default())
}

proptest! {
    #[test]
    fn parse_inverts_serialize(seed in any::<u64>()) {
        let (d, deco) = diagram(seed);
        let text = serialize(&d, &deco).unwrap();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &canonicalize_decorated(&d, &deco).unwrap());
        prop_assert_eq!(serialize(&back.0, &back.1).unwrap(), text);
    }

    #[test]
    fn moved_diagrams_round_trip(seed in any::<u64>()) {
        let (d, deco) = diagram(seed);
        let color = deco.colors()[0];
        let script = vec![
            MoveSpec::Stab { color, sign: if seed % 2 == 0 { Sign::Positive } else { Sign::Negative } },
            MoveSpec::Eps(d.circle_ids().next().unwrap()),
        ];
        let (nd, ndeco) = apply_script(&d, &deco, &script).unwrap();
        let back = parse(&serialize(&nd, &ndeco).unwrap()).unwrap();
        prop_assert_eq!(back, canonicalize_decorated(&nd, &ndeco).unwrap());
    }

    #[test]
    fn normalization_scripts_replay_from_text(seed in any::<u64>()) {
        let (d, deco) = diagram(seed);
        if let Ok((nd, ndeco, script)) = normalize_colors(&d, &deco) {
            let parsed = parse_script(&format_script(&script)).unwrap();
            prop_assert_eq!(&parsed, &script);
            prop_assert_eq!(apply_script(&d, &deco, &parsed).unwrap(), (nd, ndeco));
        }
    }
}
