use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_gauss::cocycle::Loop;
use torus_gauss::identities::{verify_bracket_identity, BracketIdentity};
use torus_gauss::loopgen::random::is_realizable;
use torus_gauss::loopgen::{knots, push_loop, BraidWord};
use torus_gauss::verify::{check_lemma, lemma_holds, run_suite, Certificate, Check, Suite};
use torus_gauss::{parse_gauss_code, GaussDiagram};

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(Suite::parse(s.name()), Some(s));
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, format!("\"{}\"", s.name()));
    }
    assert_eq!(Suite::parse("everything"), None);
}

#[test]
fn same_seed_same_report() {
    for s in [Suite::Identities, Suite::Invariance, Suite::Commutation] {
        let a = run_suite(s, 7, Some(5)).unwrap();
        let b = run_suite(s, 7, Some(5)).unwrap();
        assert!(a.passed(), "{}", a.render());
        assert_eq!(a.render(), b.render());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn push_suite_passes() {
    let r = run_suite(Suite::PushV3, 1, None).unwrap();
    assert!(r.passed());
    assert_eq!(r.cases, 4);
}

fn trefoil_push() -> Loop {
    let k = knots::get("right-trefoil").unwrap();
    push_loop(&k, 2, &BraidWord::cyclic(2), 1).unwrap()
}

#[test]
fn certificates_rerun() {
    let l = trefoil_push();
    let cert = |expected| Certificate {
        check: Check::Push { n: 2, a: 1, expected },
        diagram: l.start.to_json(),
        events: l.events.clone(),
    };
    assert!(!cert(1).reproduces().unwrap());
    assert!(cert(0).reproduces().unwrap());
    let c = cert(5);
    let back: Certificate = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);

    let closed = Certificate { check: Check::Cocycle { n: 2, a: 1 }, diagram: l.start.to_json(), events: vec![] };
    assert!(!closed.reproduces().unwrap());
    let inv = Certificate {
        check: Check::Invariant { formula: "v3".into() },
        diagram: l.start.to_json(),
        events: l.events[..1].to_vec(),
    };
    assert!(!inv.reproduces().unwrap());
}

fn random_virtual(rng: &mut ChaCha8Rng, arrows: usize) -> GaussDiagram {
    let mut ends: Vec<String> = Vec::new();
    for i in 1..=arrows {
        let s = if rng.gen() { '+' } else { '-' };
        ends.push(format!("O{i}{s}"));
        ends.push(format!("U{i}{s}"));
    }
    ends.shuffle(rng);
    parse_gauss_code(&format!("@ {}", ends.join(" "))).unwrap()
}

#[test]
fn identities_can_fail_off_the_plane() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut found = false;
    for _ in 0..2000 {
        let g = random_virtual(&mut rng, 4);
        let bad = BracketIdentity::ALL.into_iter().find(|&id| !verify_bracket_identity(id, &g));
        if let Some(id) = bad {
            assert!(!is_realizable(&g), "{g}");
            let c = Certificate { check: Check::Identity { identity: id }, diagram: g.to_json(), events: vec![] };
            assert!(c.reproduces().unwrap());
            found = true;
            break;
        }
    }
    assert!(found);
}

#[test]
fn lemma_on_push_states() {
    let ds = trefoil_push().diagrams().unwrap();
    let (checked, bad) = check_lemma(&ds).unwrap();
    assert!(checked > 0);
    assert!(bad.is_empty());
    // non-persistent arrows have no claim to check
    let g = &ds[1];
    let transient = g.arrow_ids().find(|&a| !g.is_persistent(a).unwrap()).unwrap();
    assert!(lemma_holds(g, transient).is_err());
}
