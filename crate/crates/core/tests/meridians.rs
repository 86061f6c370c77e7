use std::collections::BTreeMap;

use torus_gauss::cocycle::{evaluate_closed, evaluate_r, Loop};
use torus_gauss::loopgen::meridian::{
    cube_meridians, cusp_meridians, eval_marks, listed_cases, meridian_commutation, parse_marks, CubeScenario,
    QuadrupleScenario, QuadrupleType, Role,
};
use torus_gauss::loopgen::{knots, push_loop, BraidWord};
use torus_gauss::moves::{classify_triple, r3_sites, Gap, GlobalType, MoveEvent, MoveKind};
use torus_gauss::{parse_gauss_code, Error, GaussDiagram};

#[test]
fn mark_expressions() {
    assert_eq!(eval_marks("n-a", 5, 2).unwrap(), 3);
    assert_eq!(eval_marks("2a+1", 5, 2).unwrap(), 5);
    assert_eq!(eval_marks(" 0 ", 5, 2).unwrap(), 0);
    assert!(matches!(eval_marks("a-n", 5, 2), Err(Error::Semantic(_))));
    assert!(matches!(eval_marks("b", 5, 2), Err(Error::Syntax { .. })));
    assert!(matches!(eval_marks("", 5, 2), Err(Error::Syntax { .. })));
    assert_eq!(parse_marks("a,n-a,0", 2, 1).unwrap(), [1, 1, 0, 0]);
    assert_eq!(parse_marks("0,a,0", 3, 1).unwrap(), [0, 1, 0, 2]);
    assert!(parse_marks("n,n,0", 2, 1).is_err());
}

#[test]
fn selectors() {
    let s = QuadrupleScenario::from_selector("tetra:I:a,n-a,0", 2, 1).unwrap();
    assert_eq!((s.kind, s.marks, s.base), (QuadrupleType::I, [1, 1, 0, 0], 0));
    let s = QuadrupleScenario::from_selector("tetra:iv:0,a,0:1", 2, 1).unwrap();
    assert_eq!((s.kind, s.marks, s.base), (QuadrupleType::IV, [0, 1, 0, 1], 1));
    assert!(QuadrupleScenario::from_selector("tetra:VII:0,0,0", 2, 1).is_err());
    assert!(QuadrupleScenario::from_selector("tetra:I:0,0,0:2", 2, 1).is_err());
    let c = CubeScenario::from_selector("cube:hm:below", 2, 1).unwrap();
    assert_eq!((c.q, c.x_above, c.marks), (Role::Hm, false, [2, 0, 0]));
    assert!(CubeScenario::from_selector("cube:hm:sideways", 2, 1).is_err());
}

#[test]
fn every_listed_case_parses() {
    for k in QuadrupleType::ALL {
        for c in listed_cases(k) {
            let m = parse_marks(c, 2, 1).unwrap();
            assert_eq!(m.iter().sum::<usize>(), 2);
        }
    }
    assert!(listed_cases(QuadrupleType::VI).is_empty());
}

fn triple_kinds(l: &Loop) -> Vec<GlobalType> {
    let ds = l.diagrams().unwrap();
    l.events
        .iter()
        .enumerate()
        .map(|(k, e)| classify_triple(&ds[k], [e.arrows[0], e.arrows[1], e.arrows[2]]).unwrap().global)
        .collect()
}

#[test]
fn quadruple_meridians_cross_each_triple_twice() {
    for kind in QuadrupleType::ALL {
        let l = QuadrupleScenario::positive(kind, [1, 0, 1, 0], 0).meridian().unwrap();
        assert!(l.is_closed().unwrap());
        assert_eq!(l.events.len(), 8);
        let mut seen: BTreeMap<Vec<u32>, Vec<i8>> = BTreeMap::new();
        for e in &l.events {
            assert_eq!(e.kind, MoveKind::R3);
            let mut a = e.arrows.clone();
            a.sort();
            seen.entry(a).or_default().push(e.direction);
        }
        assert_eq!(seen.len(), 4);
        assert!(seen.values().all(|d| d.len() == 2));
        let right = triple_kinds(&l).iter().filter(|g| **g == GlobalType::R).count();
        // every triple point is crossed twice; frozen counts of global type r
        let expected = match kind {
            QuadrupleType::I => 8,
            QuadrupleType::VI => 0,
            _ => 4,
        };
        assert_eq!(right, expected, "{kind:?}");
    }
}

#[test]
fn cube_meridians_cross_the_stratum_both_ways() {
    for q in Role::ALL {
        for x_above in [true, false] {
            let s = CubeScenario { q, x_above, reversed: [false; 3], z_last: true, marks: [1, 1, 0], base: 0 };
            let l = s.meridian().unwrap();
            let kinds: Vec<MoveKind> = l.events.iter().map(|e| e.kind).collect();
            assert_eq!(kinds.iter().filter(|k| **k == MoveKind::R2).count(), 2);
            let dirs: Vec<i8> = l.events.iter().filter(|e| e.kind == MoveKind::R3).map(|e| e.direction).collect();
            assert_eq!(dirs.len(), 2);
            assert_eq!(dirs[0], -dirs[1], "{q:?} above={x_above}");
            assert_eq!(evaluate_closed(&l, 2, 1).unwrap().r, 0);
        }
    }
}

fn trefoil_closure() -> GaussDiagram {
    let k = knots::get("right-trefoil").unwrap();
    push_loop(&k, 2, &BraidWord::cyclic(2), 1).unwrap().start
}

#[test]
fn cube_meridians_inside_a_closed_cable() {
    let g = trefoil_closure();
    let ls = cube_meridians(&g).unwrap();
    assert!(!ls.is_empty());
    for l in &ls {
        assert!(l.is_closed().unwrap());
        assert_eq!(evaluate_closed(l, 2, 1).unwrap().r, 0);
    }
}

#[test]
fn commutation_squares() {
    let g = trefoil_closure();
    let sites = r3_sites(&g);
    let p = sites[0].arrows();
    let q = MoveEvent::r1_insert(g.next_free_id(), Gap { circle: 0, index: 1 }, -1, false);
    match meridian_commutation(&g, p, &q) {
        Ok(l) => {
            assert_eq!(l.events.len(), 4);
            assert_eq!(evaluate_closed(&l, 2, 1).unwrap().r, 0);
        }
        // the kink may land inside the triangle
        Err(e) => assert!(matches!(e, Error::IllegalMove(_))),
    }
    let overlapping = MoveEvent::r3_in(&g, p).unwrap();
    assert!(meridian_commutation(&g, p, &overlapping).is_err());
}

#[test]
fn cusp_meridians_close_with_zero() {
    let g = parse_gauss_code("@ O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
    let mut count = 0;
    for on in 1..=6 {
        for from in 1..=6 {
            if on == from {
                continue;
            }
            for l in cusp_meridians(&g, Gap { circle: 0, index: on }, Gap { circle: 0, index: from }).unwrap() {
                assert!(l.is_closed().unwrap());
                assert_eq!(l.events.len(), 5);
                assert_eq!(evaluate_r(&l, 2, 1).unwrap().r, 0);
                count += 1;
            }
        }
    }
    assert!(count > 0);
}

#[test]
fn empty_loop_is_zero() {
    let l = Loop::new(GaussDiagram::unknot());
    assert_eq!(evaluate_closed(&l, 2, 1).unwrap().r, 0);
    assert!(evaluate_closed(&l, 2, 2).is_err());
}

#[test]
fn open_paths_are_refused() {
    let k = knots::get("right-trefoil").unwrap();
    let mut l = push_loop(&k, 2, &BraidWord::cyclic(2), 1).unwrap();
    l.events.pop();
    assert!(matches!(evaluate_closed(&l, 2, 1), Err(Error::OpenLoop(_))));
}
