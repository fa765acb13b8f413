mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::op_pair;
use wronsk::{certify_zero, random_check, QOp, Verdict};

/// Exhaustive certification against high-degree random evaluation, which
/// never relies on the basis bound.
#[test]
fn certification_agrees_with_random_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut nonzero = 0;
    for i in 0..40 {
        let d = 1 + i % 2;
        let (outer, inner) = op_pair(&mut rng, d, 5);
        let cert = certify_zero(&outer, &inner).unwrap();
        let degree = cert.basis_bound().unwrap() + 2;
        let random = random_check(&outer, &inner, 8, degree, i as u64).unwrap();
        let jacobiator = QOp::insertion(outer.clone(), inner.clone()).unwrap();
        match cert.verdict {
            Verdict::Zero => assert_eq!(random.verdict, Verdict::Zero, "case {i}: {outer:?}[{inner:?}]"),
            Verdict::Nonzero => {
                nonzero += 1;
                for w in &cert.witnesses {
                    assert!(!w.value.is_zero());
                    assert_eq!(jacobiator.apply(&w.args).unwrap(), w.value, "case {i}");
                }
            }
        }
        for w in &random.witnesses {
            assert_eq!(jacobiator.apply(&w.args).unwrap(), w.value);
        }
    }
    // Incomplete first-order specs make a few pairs fail on purpose.
    assert!(nonzero > 0);
}
