use torus_gauss::cocycle::evaluate_closed;
use torus_gauss::formula::{p02, v3};
use torus_gauss::loopgen::{cable, classical_closure, close_with_braid, knots, push_loop, BraidWord};
use torus_gauss::moves::MoveKind;
use torus_gauss::GaussDiagram;

// v3 fixed by the normalisation v3(right trefoil) = 1; p02 is the z² term
// of HOMFLYPT (see the skein oracle)
const VALUES: [(&str, i64, i64); 4] =
    [("unknot", 0, 0), ("right-trefoil", 1, 1), ("left-trefoil", -1, 1), ("figure-eight", 0, -1)];

#[test]
fn values_on_named_knots() {
    for (name, v, p) in VALUES {
        let k = knots::get(name).unwrap();
        assert_eq!((v3(&k), p02(&k)), (v, p), "{name}");
    }
}

#[test]
fn cable_and_closure_sizes() {
    let t = knots::get("right-trefoil").unwrap();
    let c = cable(&t, 2).unwrap();
    assert_eq!(c.num_crossings(), 12);
    assert!(c.to_diagram().unwrap().signs().values().all(|s| *s == 1));
    let k = close_with_braid(&c, &BraidWord::cyclic(2), 1).unwrap().diagram;
    assert_eq!((k.num_arrows(), k.n()), (13, 2));

    let u = cable(&GaussDiagram::unknot(), 2).unwrap();
    assert_eq!(u.num_crossings(), 0);
    let k = close_with_braid(&u, &BraidWord::cyclic(2), 1).unwrap().diagram;
    assert_eq!((k.num_arrows(), k.n()), (1, 2));
    assert!(cable(&t, 0).is_err());
}

#[test]
fn braids_must_permute_cyclically() {
    let id = BraidWord::new(3, vec![(1, 1), (1, -1)]).unwrap();
    assert!(!id.is_cyclic());
    assert!(classical_closure(&id, 1).is_err());
    assert!(BraidWord::new(2, vec![(2, 1)]).is_err());
    assert!(BraidWord::cyclic(4).is_cyclic());
}

#[test]
fn push_loops_close_and_give_v3() {
    for (name, v, _) in VALUES {
        let k = knots::get(name).unwrap();
        let l = push_loop(&k, 2, &BraidWord::cyclic(2), 1).unwrap();
        assert!(l.is_closed().unwrap());
        // one pass and 2·n·c third moves per braid letter
        let c = k.num_arrows();
        assert_eq!(l.events.len(), 1 + 4 * c, "{name}");
        assert_eq!(l.events.iter().filter(|e| e.kind == MoveKind::Pass).count(), 1);
        assert_eq!(evaluate_closed(&l, 2, 1).unwrap().r, v, "{name}");
    }
}

#[test]
fn right_trefoil_audit() {
    let k = knots::get("right-trefoil").unwrap();
    let e = evaluate_closed(&push_loop(&k, 2, &BraidWord::cyclic(2), 1).unwrap(), 2, 1).unwrap();
    assert_eq!(e.contributing_events.len(), 1);
    let c = &e.contributing_events[0];
    assert_eq!((c.sign, c.w, c.writhe_hm), (1, 1, 1));
}

#[test]
fn wider_cables_close_up() {
    for name in ["right-trefoil", "figure-eight"] {
        let k = knots::get(name).unwrap();
        for n in [3, 4] {
            let sigma = BraidWord::cyclic(n);
            let l = push_loop(&k, n, &sigma, 1).unwrap();
            assert!(l.is_closed().unwrap(), "{name} n={n}");
            let letters = sigma.letters.len();
            assert_eq!(l.events.len(), letters * (1 + 2 * n * k.num_arrows()));
            assert!(l.diagrams().unwrap().iter().all(|d| d.n() == n));
        }
    }
}
