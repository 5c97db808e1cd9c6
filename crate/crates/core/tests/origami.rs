use std::collections::BTreeSet;

use dessinry::braid::{braid_orbit, preset_gamma2_generators, preset_pure_generators};
use dessinry::enumeration::enumerate;
use dessinry::origami::{orbit_of_dessins, origami_orbit, BipartiteOrigami, RowDiagram, Shear};
use dessinry::MonodromyTuple;

fn shear_pair() -> (BipartiteOrigami, BipartiteOrigami) {
    let text = include_str!("../fixtures/shear_pair.json");
    let rows = RowDiagram::collection_from_json(text).unwrap();
    (rows["O"].to_origami().unwrap(), rows["O_prime"].to_origami().unwrap())
}

#[test]
fn shear_pair_transcription() {
    let (o, o2) = shear_pair();
    assert_eq!(o.m(), 3);
    assert_eq!(o.r().images(), &[1, 2, 0]);
    assert_eq!(o.l().images(), &[0, 1, 2]);
    assert_eq!(o.u().images(), &[1, 0, 2]);
    assert_eq!(o.d().images(), &[1, 0, 2]);
    assert_eq!(o2.d().images(), &[0, 2, 1]);
    assert!(o.validate().is_ok() && o2.validate().is_ok());
}

#[test]
fn shear_pair_delta_hor_gives_o_prime() {
    let (o, o2) = shear_pair();
    let image = o.delta_hor().unwrap();
    assert!(image.isomorphic(&o2).unwrap());
    assert!(!o.isomorphic(&o2).unwrap());
    let orbit = origami_orbit(&o).unwrap();
    assert!(orbit.contains(&o.to_dessin().unwrap()));
    assert!(orbit.contains(&o2.to_dessin().unwrap()));
}

#[test]
fn shear_pair_vertex_valences() {
    let (o, _) = shear_pair();
    let t = o.to_dessin().unwrap();
    assert_eq!(t.d(), 3);
    assert!(t.validate().is_ok());
    // genus from the squares: 6 squares, no cone points beyond the pillowcase corners
    assert_eq!(t.genus().unwrap(), 0);
}

fn classes(d: usize) -> Vec<MonodromyTuple> {
    enumerate(4, d).unwrap().tuples().cloned().collect()
}

#[test]
fn roundtrip_dessin_origami() {
    for d in 1..=3 {
        for t in classes(d) {
            let o = BipartiteOrigami::from_dessin(&t).unwrap();
            assert_eq!(o.to_dessin().unwrap(), t);
            assert_eq!(o.canonical().unwrap(), o);
            let back = BipartiteOrigami::from_dessin(&o.to_dessin().unwrap()).unwrap();
            assert_eq!(back, o);
        }
    }
}

#[test]
fn chessboard_is_the_unique_all_transposition_class() {
    let all_two: Vec<_> = classes(2)
        .into_iter()
        .filter(|t| t.perms().iter().all(|g| g.cycle_type() == vec![2]))
        .collect();
    assert_eq!(all_two.len(), 1);
    let o = BipartiteOrigami::from_dessin(&all_two[0]).unwrap();
    assert!(o.isomorphic(&BipartiteOrigami::chessboard()).unwrap());
}

#[test]
fn shears_preserve_invariants() {
    for d in 1..=3 {
        for t in classes(d) {
            let o = BipartiteOrigami::from_dessin(&t).unwrap();
            for op in [Shear::Hor, Shear::Ver, Shear::HorInv, Shear::VerInv] {
                let image = o.shear(op).unwrap();
                assert!(image.validate().is_ok());
                assert_eq!(image.m(), o.m());
                let s = image.to_dessin().unwrap();
                assert_eq!(s.cycle_profile(), t.cycle_profile());
                assert_eq!(s.genus().unwrap(), t.genus().unwrap());
                assert!(image.shear(op.inverse()).unwrap().isomorphic(&o).unwrap());
            }
        }
    }
}

#[test]
fn word_presets_match_origami_shears() {
    let words = preset_gamma2_generators();
    for d in 1..=3 {
        for t in classes(d) {
            let o = BipartiteOrigami::from_dessin(&t).unwrap();
            let hor = o.delta_hor().unwrap().to_dessin().unwrap().canonical_form().unwrap();
            let ver = o.delta_ver().unwrap().to_dessin().unwrap().canonical_form().unwrap();
            assert_eq!(words[0].forward.apply(&t).unwrap().canonical_form().unwrap(), hor, "{t}");
            assert_eq!(words[1].forward.apply(&t).unwrap().canonical_form().unwrap(), ver, "{t}");
        }
    }
}

#[test]
fn orbit_partitions_and_agree() {
    for d in 1..=3 {
        let all = classes(d);
        let mut covered = BTreeSet::new();
        let mut total = 0;
        for t in &all {
            if covered.contains(t) {
                continue;
            }
            let shear = orbit_of_dessins(std::slice::from_ref(t)).unwrap();
            let words = braid_orbit(std::slice::from_ref(t), &preset_gamma2_generators()).unwrap();
            let pure = braid_orbit(std::slice::from_ref(t), &preset_pure_generators(4)).unwrap();
            assert_eq!(shear.orbit, words.orbit);
            assert_eq!(shear.orbit, pure.orbit);
            total += shear.len();
            covered.extend(shear.orbit.iter().cloned());
        }
        assert_eq!(total, all.len());
    }
}

#[test]
fn shears_act_distinctly_on_degree_three() {
    let all = classes(3);
    let (mut hor_moves, mut ver_moves, mut differ) = (false, false, false);
    for t in &all {
        let o = BipartiteOrigami::from_dessin(t).unwrap();
        let h = o.delta_hor().unwrap().to_dessin().unwrap().canonical_form().unwrap();
        let v = o.delta_ver().unwrap().to_dessin().unwrap().canonical_form().unwrap();
        hor_moves |= h != *t;
        ver_moves |= v != *t;
        differ |= h != v;
    }
    assert!(hor_moves && ver_moves && differ);
}
