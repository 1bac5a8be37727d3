//! Worked examples for every operation, checked against hand-derived values.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use omegaq::bar::{bar, bar_square_failures, one_sided_bar, rho, AugmentationModule, Bar, BarWindow, FiniteDga};
use omegaq::coalgebra::{coalgebra_axioms_check, induced_chain_map, normalized_chains};
use omegaq::cobar::{cobar, h0_relations, pi1_presentation, psi, psi_relation};
use omegaq::corpus::space;
use omegaq::groups::{
    abelianization, regular_module, todd_coxeter, word_reduce, CosetTable, FiniteGroup, GroupPresentation, GroupRing,
    Reduced,
};
use omegaq::linalg::{
    homology, induced_map_on_homology, smith_normal_form, ChainComplex, ChainMap, FGAbelianGroup, IntMatrix,
};
use omegaq::simplicial::{
    covering_space, delta_quotient, point, Issue, wedge_of, DegenerateRef, SimplicialMap, SimplicialSetData, SimplicialSetJson,
};
use omegaq::twisted::{local_homology, twisted_tensor, PiModule, PiModuleJson};
use omegaq::Error;

fn h(groups: &[FGAbelianGroup]) -> Vec<String> {
    groups.iter().map(FGAbelianGroup::pretty).collect()
}

fn chains_homology(x: &SimplicialSetData) -> Vec<String> {
    h(&omegaq::coalgebra::chain_complex(x).unwrap().homology_up_to(2))
}

fn table(name: &str, budget: usize) -> CosetTable {
    let g = pi1_presentation(&space(name).unwrap()).unwrap();
    todd_coxeter(&g, budget).unwrap().table().unwrap().clone()
}

// simplicial_core

#[test]
fn validate_reports() {
    assert!(space("s2").unwrap().validate().is_empty());
    assert!(space("torus").unwrap().validate().is_empty());
    let mut d = SimplicialSetData::new();
    d.add_named("v", 0, &[]).unwrap();
    d.add_named("a", 1, &[(vec![], "v"), (vec![], "v")]).unwrap();
    // d₀ should be an edge
    d.add_named("t", 2, &[(vec![], "v"), (vec![0], "v"), (vec![], "a")]).unwrap();
    let report = d.validate();
    assert_eq!(
        report.issues,
        vec![Issue::FaceDimension { simplex: "t".into(), index: 0, expected: 1, found: 0 }]
    );
}

#[test]
fn standard_models() {
    assert_eq!(delta_quotient(1).unwrap().counts(), vec![1, 1]);
    assert_eq!(delta_quotient(2).unwrap().counts(), vec![1, 0, 1]);
    let w = wedge_of(&[delta_quotient(1).unwrap(), delta_quotient(2).unwrap()]).unwrap();
    assert_eq!(w.counts(), vec![1, 1, 1]);
    assert!(matches!(delta_quotient(0), Err(Error::InvalidParameter(_))));
}

#[test]
fn presentation_complexes() {
    let rp2 = space("rp2").unwrap();
    let t = rp2.key("r1_t1").unwrap();
    let faces: Vec<String> = rp2.stored_faces(t).iter().map(|f| rp2.describe(f)).collect();
    assert_eq!(faces, ["a", "s0 v", "a"]);
    let p3 = space("p3").unwrap();
    assert_eq!(p3.counts(), vec![1, 2, 2]);
    assert_eq!(p3.euler_characteristic(), 1);
    let torus = space("torus").unwrap();
    assert_eq!(torus.counts(), vec![1, 4, 3]);
    assert_eq!(torus.euler_characteristic(), 0);
    let empty = GroupPresentation::parse(&["a"], &["a a^-1"]);
    assert!(matches!(empty, Err(Error::EmptyRelator(0))));
}

#[test]
fn covers() {
    let rp2 = space("rp2").unwrap();
    let c = covering_space(&rp2, &table("rp2", 100)).unwrap();
    assert_eq!(c.counts(), vec![2, 2, 2]);
    assert_eq!(chains_homology(&c), ["ℤ", "0", "ℤ"]);
    let p3 = space("p3").unwrap();
    let c = covering_space(&p3, &table("p3", 100)).unwrap();
    assert_eq!(c.euler_characteristic(), 3);
    assert_eq!(chains_homology(&c), ["ℤ", "0", "ℤ²"]);
    let s2 = space("s2").unwrap();
    let c = covering_space(&s2, &table("s2", 10)).unwrap();
    assert_eq!(c.counts(), s2.counts());
}

#[test]
fn json_round_trip() {
    for name in omegaq::corpus::names() {
        let x = space(name).unwrap();
        let j = SimplicialSetJson::from_data(x.data());
        let text = serde_json::to_string(&j).unwrap();
        let back: SimplicialSetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(&back.to_data().unwrap(), x.data(), "{name}");
    }
    let bad = r#"{"schema":"ssetv0","dims":{"0":["v"]},"faces":{}}"#;
    let j: SimplicialSetJson = serde_json::from_str(bad).unwrap();
    assert!(j.to_data().is_err());
}

// exact_linear

#[test]
fn smith_forms() {
    let s = smith_normal_form(&IntMatrix::from_dense(&[vec![2]]));
    assert_eq!(s.diagonal, vec![BigInt::from(2)]);
    let m = IntMatrix::from_dense(&[vec![2, 4], vec![6, 10]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(2)]);
    assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
    assert!(smith_normal_form(&IntMatrix::zeros(3, 2)).diagonal.is_empty());
}

#[test]
fn homology_examples_and_rejection() {
    assert_eq!(chains_homology(space("rp2").unwrap().data()), ["ℤ", "ℤ/2", "0"]);
    assert_eq!(chains_homology(space("s2").unwrap().data()), ["ℤ", "0", "ℤ"]);
    assert_eq!(chains_homology(space("torus").unwrap().data()), ["ℤ", "ℤ²", "ℤ"]);
    let d1 = IntMatrix::from_dense(&[vec![1]]);
    let d2 = IntMatrix::from_dense(&[vec![1]]);
    let r = ChainComplex::new(vec![1, 1, 1], vec![IntMatrix::zeros(0, 1), d1, d2]);
    assert_eq!(r.unwrap_err(), Error::NotAComplex(2));
}

#[test]
fn induced_maps_on_homology() {
    let torus = ChainMap::identity(&omegaq::coalgebra::chain_complex(space("torus").unwrap().data()).unwrap());
    let m = induced_map_on_homology(&torus, 1).unwrap();
    assert!(m.is_iso);
    assert_eq!(m.matrix, IntMatrix::identity(2));

    let bi = space("binary-icosahedral").unwrap();
    let f = SimplicialMap::collapse(Arc::new(bi.data().clone()), &point());
    let c = induced_chain_map(&f).unwrap();
    assert!(induced_map_on_homology(&c, 1).unwrap().is_iso);
    assert!(induced_map_on_homology(&c, 2).unwrap().is_iso);

    let s1 = omegaq::coalgebra::chain_complex(delta_quotient(1).unwrap().data()).unwrap();
    let double = ChainMap::new(s1.clone(), s1, vec![IntMatrix::identity(1), IntMatrix::from_dense(&[vec![2]])]).unwrap();
    let m = induced_map_on_homology(&double, 1).unwrap();
    assert_eq!(m.matrix, IntMatrix::from_dense(&[vec![2]]));
    assert!(!m.is_iso);
}

// coalgebra

#[test]
fn chains_and_coproducts() {
    let s1 = normalized_chains(delta_quotient(1).unwrap().data()).unwrap();
    assert!(s1.boundary(1).is_zero());
    assert_eq!(s1.delta(1, 0), IntMatrix::identity(1));
    assert_eq!(s1.delta(0, 1), IntMatrix::identity(1));
    let rp2 = normalized_chains(space("rp2").unwrap().data()).unwrap();
    assert_eq!(rp2.boundary(2), IntMatrix::from_dense(&[vec![2]]));
    assert_eq!(rp2.delta(1, 1), IntMatrix::from_dense(&[vec![1]]));
    for name in omegaq::corpus::names() {
        let c = normalized_chains(space(name).unwrap().data()).unwrap();
        assert!(coalgebra_axioms_check(&c).is_empty(), "{name}");
    }
    let d3 = normalized_chains(delta_quotient(3).unwrap().data()).unwrap();
    assert!(coalgebra_axioms_check(&d3).is_empty());
}

#[test]
fn induced_chain_maps() {
    let x = Arc::new(space("torus").unwrap().data().clone());
    let id = induced_chain_map(&SimplicialMap::identity(x.clone())).unwrap();
    assert_eq!(id.component(2), IntMatrix::identity(3));
    let c = induced_chain_map(&SimplicialMap::collapse(x, &point())).unwrap();
    assert_eq!(c.component(0), IntMatrix::identity(1));
    assert!(c.component(1).is_zero() && c.component(2).is_zero());

    let s1 = Arc::new(delta_quotient(1).unwrap().data().clone());
    let w = Arc::new(wedge_of(&[delta_quotient(1).unwrap(), delta_quotient(2).unwrap()]).unwrap().into_data());
    let assign: BTreeMap<String, DegenerateRef> = [
        ("v".to_string(), DegenerateRef { degens: vec![], target: "v".into() }),
        ("c1".to_string(), DegenerateRef { degens: vec![], target: "0.c1".into() }),
    ]
    .into();
    let inc = SimplicialMap::from_names(s1, w, &assign).unwrap();
    let m = induced_chain_map(&inc).unwrap();
    assert_eq!(m.component(1), IntMatrix::identity(1));
    assert_eq!(m.component(2).rows(), 1);
}

// cobar

#[test]
fn cobar_examples() {
    let s1 = normalized_chains(delta_quotient(1).unwrap().data()).unwrap();
    let cb = cobar(&s1, 2, 3).unwrap();
    let words: Vec<String> = cb.basis(0, 100).unwrap().iter().map(|w| cb.format_word(w)).collect();
    assert_eq!(words, ["1", "[c1]", "[c1|c1]", "[c1|c1|c1]"]);
    for w in cb.basis(0, 100).unwrap() {
        assert!(cb.differential_word(&w).is_zero());
    }
    let rp2 = normalized_chains(space("rp2").unwrap().data()).unwrap();
    let cb = cobar(&rp2, 4, 6).unwrap();
    let tau = cb.generator_id(2, 0);
    assert_eq!(cb.format_element(cb.generator_differential(tau)), "-2[a] - [a|a]");
    assert!(cb.check_d_squared(5000, 200, 7).passed());
    let two = normalized_chains(&{
        let mut d = SimplicialSetData::new();
        d.add_named("v", 0, &[]).unwrap();
        d.add_named("w", 0, &[]).unwrap();
        d
    });
    if let Ok(c) = two {
        assert!(matches!(cobar(&c, 2, 2), Err(Error::NotConnected(2))));
    }
}

#[test]
fn h0_and_psi() {
    let rp2 = space("rp2").unwrap();
    let r = h0_relations(&normalized_chains(rp2.data()).unwrap()).unwrap();
    assert_eq!(r.format_relation(0), "-2x_a - x_a·x_a");
    let torus = h0_relations(&normalized_chains(space("torus").unwrap().data()).unwrap()).unwrap();
    assert_eq!(torus.relations.len(), 3);
    let s1 = h0_relations(&normalized_chains(delta_quotient(1).unwrap().data()).unwrap()).unwrap();
    assert!(s1.relations.is_empty());

    let g = pi1_presentation(&rp2).unwrap();
    let t = todd_coxeter(&g, 10).unwrap().table().unwrap().clone();
    assert_eq!(psi(&[], &g).unwrap().evaluate(&t), vec![BigInt::from(1), BigInt::from(0)]);
    assert_eq!(psi(&["a".into()], &g).unwrap().evaluate(&t), vec![BigInt::from(-1), BigInt::from(1)]);
    assert_eq!(psi(&["a".into(), "a".into()], &g).unwrap().evaluate(&t), vec![BigInt::from(2), BigInt::from(-2)]);
    assert!(psi_relation(&r.relations[0], &g).unwrap().evaluate(&t).iter().all(|c| *c == BigInt::from(0)));
    assert!(psi(&["z".into()], &g).is_err());
}

#[test]
fn pi1_presentations() {
    let g = pi1_presentation(&space("rp2").unwrap()).unwrap();
    assert_eq!(todd_coxeter(&g, 10).unwrap().table().unwrap().len(), 2);
    let g = pi1_presentation(&space("torus").unwrap()).unwrap();
    assert_eq!(abelianization(&g), FGAbelianGroup::free(2));
    let g = pi1_presentation(&space("s2").unwrap()).unwrap();
    assert!(g.generators().is_empty());
    assert_eq!(todd_coxeter(&g, 10).unwrap().table().unwrap().len(), 1);
}

#[test]
fn group_likes_and_antipode() {
    for n in [1, 2, 3] {
        let ring = GroupRing::new(FiniteGroup::cyclic(n));
        let gl = ring.group_likes();
        assert_eq!(gl.len(), n);
        for g in 0..n {
            assert!(gl.contains(&ring.basis(g)));
            let x = ring.basis(g);
            let lhs = ring.contract_with_antipode(&ring.coproduct(&x), true);
            let rhs: Vec<BigInt> = ring.unit().iter().map(|u| u * ring.counit(&x)).collect();
            assert_eq!(lhs, rhs);
        }
    }
}

// groups

#[test]
fn groups_examples() {
    let z2 = GroupPresentation::parse(&["a"], &["a a"]).unwrap();
    assert_eq!(abelianization(&z2).pretty(), "ℤ/2");
    let t = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
    assert_eq!(abelianization(&t), FGAbelianGroup::free(2));
    let bi = GroupPresentation::parse(&["s", "t"], &omegaq::corpus::BINARY_ICOSAHEDRAL_RELATORS).unwrap();
    assert!(abelianization(&bi).is_trivial());
    let table = todd_coxeter(&bi, 10_000).unwrap().table().unwrap().clone();
    assert_eq!(table.len(), 120);
    assert_eq!(word_reduce(&bi, "s t s t s^-1 s^-1 s^-1", Some(&table)).unwrap(), Reduced::Coset(0));
    assert_eq!(word_reduce(&z2, "a a^-1", None).unwrap(), Reduced::Word(vec![]));
    let z3 = GroupPresentation::parse(&["a"], &["a a a"]).unwrap();
    let t3 = todd_coxeter(&z3, 10).unwrap().table().unwrap().clone();
    assert_eq!(t3.len(), 3);
    let m = regular_module(&t3).unwrap();
    assert_eq!(m.action(0).to_dense().to_sparse(), m.action(0).clone());
    let m2 = regular_module(todd_coxeter(&z2, 10).unwrap().table().unwrap()).unwrap();
    assert_eq!(m2.action(0), &IntMatrix::from_dense(&[vec![0, 1], vec![1, 0]]));
}

// bar_twisted

#[test]
fn twisted_examples() {
    let rp2 = space("rp2").unwrap();
    let orient = PiModule::character(vec!["a".into()], &[-1]).unwrap();
    assert_eq!(h(&local_homology(&rp2, &orient, 2).unwrap()), ["ℤ/2", "0", "ℤ"]);
    let c = normalized_chains(rp2.data()).unwrap();
    let t = twisted_tensor(&c, &orient, &pi1_presentation(&rp2).unwrap()).unwrap();
    assert_eq!(t.boundary(1), IntMatrix::from_dense(&[vec![2]]));
    assert!(t.boundary(2).is_zero());
    let p3 = space("p3").unwrap();
    let reg = regular_module(&table("p3", 100)).unwrap();
    assert_eq!(h(&local_homology(&p3, &reg, 2).unwrap()), ["ℤ", "0", "ℤ²"]);
    let torus = space("torus").unwrap();
    let gens = pi1_presentation(&torus).unwrap().generators().to_vec();
    assert_eq!(h(&local_homology(&torus, &PiModule::trivial(gens, 1), 2).unwrap()), ["ℤ", "ℤ²", "ℤ"]);
    // a ↦ -1 violates a³ = e
    let bad = PiModule::character(vec!["a".into(), "r1_p2".into()], &[-1, 1]).unwrap();
    assert!(matches!(local_homology(&p3, &bad, 2), Err(Error::InvalidModule(_))));
    let wrong: PiModuleJson = serde_json::from_str(r#"{"rank":1,"action":{"a":{"rows":1,"cols":1,"entries":[[0,0,"-1"]]}}}"#).unwrap();
    let m = PiModule::from_json(&wrong, &["a".to_string(), "r1_p2".to_string()]);
    assert!(m.is_err());
}

#[test]
fn bar_examples() {
    let z = FiniteDga::ground();
    assert_eq!(bar(&Bar::new(&z), &BarWindow { max_words: 3, max_degree: 3, cap: 10 }).unwrap().complex.ranks(), &[1, 0, 0, 0]);
    let ext = FiniteDga::exterior(1);
    let b = bar(&Bar::new(&ext), &BarWindow { max_words: 4, max_degree: 8, cap: 10 }).unwrap();
    let reported = b.reported_homology();
    for k in 0..4 {
        assert_eq!(reported[2 * k], Some(FGAbelianGroup::free(1)));
    }
    let s2 = normalized_chains(delta_quotient(2).unwrap().data()).unwrap();
    let cb = cobar(&s2, 4, 4).unwrap();
    let w = BarWindow { max_words: 3, max_degree: 4, cap: 1000 };
    assert!(bar_square_failures(&Bar::new(&cb), &w).unwrap().is_empty());
    let b = one_sided_bar(&Bar::new(&z), &AugmentationModule(1), &w).unwrap();
    assert_eq!(b.complex.ranks()[0], 1);
    assert_eq!(homology(&b.complex, 0).unwrap(), FGAbelianGroup::free(1));
}

#[test]
fn rho_examples() {
    let s1 = normalized_chains(delta_quotient(1).unwrap().data()).unwrap();
    let cb = cobar(&s1, 2, 3).unwrap();
    let vertex = rho(&s1, &cb, 0, 0, 1);
    assert_eq!(vertex.into_iter().collect::<Vec<_>>(), vec![(vec![], BigInt::from(1))]);
    let edge = rho(&s1, &cb, 1, 0, 1);
    assert_eq!(edge.len(), 1);
    let (w, _) = edge.iter().next().unwrap();
    assert_eq!(w, &vec![vec![cb.generator_id(1, 0)]]);
    assert!(Bar::new(&cb).differential(&edge).is_empty());

    let rp2 = normalized_chains(space("rp2").unwrap().data()).unwrap();
    let cb = cobar(&rp2, 4, 6).unwrap();
    let b = Bar::new(&cb);
    let tau = rho(&rp2, &cb, 2, 0, 1);
    let a = cb.generator_id(1, 0);
    let labels: Vec<String> = tau.iter().map(|(w, c)| format!("{c}{}", b.format_word(w))).collect();
    assert_eq!(labels, [format!("1{{[a]|[a]}}"), "1{[r1_t1]}".to_string()].map(|s| s.to_string()));
    let mut expected = BTreeMap::new();
    expected.insert(vec![vec![a]], BigInt::from(-2));
    assert_eq!(b.differential(&tau), expected);
}
