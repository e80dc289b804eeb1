//! Worked examples across modules.

use msdual::canonical::{canonical_basis, monomial_for};
use msdual::crystal::{crystal_graph, f_tilde, highest_weight_path, Component};
use msdual::hallpbw::{f_action, hall_product, PBWVector};
use msdual::involution::{mw_dual, sharp, tau};
use msdual::laurent::gauss_int;
use msdual::quiverrep::generic_commutant_dual;
use msdual::{DegreeVector, Label, LaurentPoly, Multisegment, VertexRing};

const Z: VertexRing = VertexRing::Integers;
const Z2: VertexRing = VertexRing::Cyclic(2);
const Z3: VertexRing = VertexRing::Cyclic(3);

fn ms(text: &str, ring: VertexRing) -> Multisegment {
    Multisegment::parse(text, ring).unwrap()
}

#[test]
fn figure_one_label() {
    let label = Label::new(vec![2, 2, 3, 1, 1, 2, 2, 1], vec![2, 2, 0, 0, 0, -1, -1, -1]).unwrap();
    let m = Multisegment::from_label(&label, Z);
    assert_eq!(m, ms("2[2;2) + [0;3) + 2[0;1) + 2[-1;2) + [-1;1)", Z));
    assert_eq!(m, ms("[2;2)+[2;2)+[0;3)+2[0;1)+2[-1;2)+[-1;1)", Z));
    let reduced = Multisegment::from_label(&label, Z2);
    assert_eq!(reduced, ms("2[0;2) + [0;3) + 2[0;1) + 2[1;2) + [1;1)", Z2));
    assert_eq!(m.reduce_mod(2).unwrap(), reduced);
}

#[test]
fn quantum_integer() {
    assert_eq!(gauss_int(2), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
}

#[test]
fn aperiodic_iff_path_reaches_empty() {
    for m in msdual::enumerate::cyclic_up_to(2, 5) {
        assert_eq!(m.is_aperiodic().unwrap(), highest_weight_path(&m).top.is_empty(), "{m}");
    }
}

#[test]
fn involutions_on_small_cases() {
    assert_eq!(tau(&ms("[0;2)", Z3)).unwrap(), ms("[0;1)+[1;1)", Z3));
    assert_eq!(sharp(&ms("[0;1)", Z3)).unwrap(), ms("[0;1)", Z3));
    assert_eq!(mw_dual(&ms("[0;3)", Z)).unwrap(), ms("[0;1)+[1;1)+[2;1)", Z));
    assert_eq!(generic_commutant_dual(&ms("[0;3)", Z), 1).unwrap(), ms("[0;1)+[1;1)+[2;1)", Z));
}

#[test]
fn hall_product_agrees_with_generator_action() {
    for text in ["[0;1)", "[0;2)", "2[1;1)", "[0;1)+[1;1)"] {
        let m = ms(text, Z2);
        for i in 0..2 {
            let o = PBWVector::basis(&f_tilde(&Multisegment::empty(Z2), i));
            assert_eq!(hall_product(&o, &PBWVector::basis(&m)).unwrap(), f_action(i, &PBWVector::basis(&m)), "f_{i} on {m}");
        }
    }
}

#[test]
fn canonical_examples() {
    let a = monomial_for(&ms("(2;1]", Z2)).unwrap();
    assert_eq!(a.coeff(&ms("(1;0]+(1;1]", Z2)), LaurentPoly::v_pow(1));
    let t = canonical_basis(Z2, &DegreeVector::from_dense(&[2, 1])).unwrap();
    t.validate().unwrap();
    for m in &t.order {
        assert!(m.is_aperiodic().unwrap());
    }
    let t = canonical_basis(Z, &DegreeVector::from_entries([(0, 1), (1, 1)])).unwrap();
    assert_eq!(t.get(&ms("[0;2)", Z)).unwrap().coeff(&ms("[0;1)+[1;1)", Z)), LaurentPoly::v_pow(1));
}

#[test]
fn component_of_empty_over_z3() {
    let g = crystal_graph(Z3, 3, Component::Empty).unwrap();
    assert_eq!(g.counts_by_degree(), vec![1, 3, 9, 21]);
}
