use std::time::Instant;

use pgl3_lattices::building::{act, orbit_bfs, quotient_graph, s4_vertex_type, NeighborKind, S4Kind, S4Type, DEFAULT_PRECISION};
use pgl3_lattices::group::{describe_projective, stabilizer_in_finite};
use pgl3_lattices::named::*;

#[test]
fn gamma_m_is_transitive_on_the_trusted_ball() {
    let t0 = Instant::now();
    let s = orbit_bfs(&gamma_m_generators(), &vertex_v(), 3, DEFAULT_PRECISION).unwrap();
    let t = s.table(Some(&isom_m_projective().unwrap()), DEFAULT_PRECISION).unwrap();
    eprintln!("gm: ball {} vertices, {:?}", s.ball.len(), t0.elapsed());
    assert_eq!(t.vertex_orbits, 1);
    assert_eq!(t.edge_orbits, 1);
    assert_eq!(t.triangle_orbits, 1);
    assert_eq!(t.stabilizer_orders, vec![21]);
    assert_eq!(t.stabilizers[0].recognized_name, "F21");
    let q = quotient_graph(&s).unwrap();
    assert_eq!(q.nodes.len(), 1);
    assert_eq!(q.edges.len(), 1);
    assert_eq!(q.edges[0].multiplicity, 14);
}

#[test]
fn gamma_l_has_two_vertex_orbits() {
    let t0 = Instant::now();
    let gens = gamma_l_generators().unwrap();
    let s = orbit_bfs(&gens, &vertex_c(), 3, DEFAULT_PRECISION).unwrap();
    let t = s.table(Some(&isom_l_projective().unwrap()), DEFAULT_PRECISION).unwrap();
    eprintln!("gl: {} generators, ball {} vertices, {:?}", gens.len(), s.ball.len(), t0.elapsed());
    assert_eq!(t.vertex_orbits, 2);
    assert_eq!(t.orbit_reps[0], vertex_c());
    assert_eq!(s.same_orbit(&vertex_c(), &vertex_d()), Some(false));
    assert_eq!(t.stabilizer_orders, vec![168, 24]);
    for label in ['A', 'B', 'F', 'G'] {
        assert_eq!(s.same_orbit(&strip_vertex(label), &vertex_d()), Some(true), "{label}");
    }
    assert_eq!(s.same_orbit(&strip_vertex('E'), &vertex_c()), Some(true));
    assert_eq!(quotient_graph(&s).unwrap().nodes.len(), 2);
}

#[test]
fn stabilizers_in_isom_l() {
    let g = isom_l_projective().unwrap();
    assert_eq!(describe_projective(&g).unwrap().recognized_name, "L3(2)");
    let c = stabilizer_in_finite(&g, &vertex_c(), DEFAULT_PRECISION).unwrap();
    assert_eq!((c.order, c.recognized_name.as_str()), (168, "L3(2)"));
    let d = stabilizer_in_finite(&g, &vertex_d(), DEFAULT_PRECISION).unwrap();
    assert_eq!((d.order, d.recognized_name.as_str()), (24, "S4"));
    let m = stabilizer_in_finite(&isom_m_projective().unwrap(), &vertex_v(), DEFAULT_PRECISION).unwrap();
    assert_eq!((m.order, m.recognized_name.as_str()), (21, "F21"));
}

#[test]
fn s4_types_around_d() {
    let s4 = frame_s4().unwrap();
    let d = vertex_d();
    assert_eq!(s4_vertex_type(&s4, &d, DEFAULT_PRECISION).unwrap().kind, S4Kind::Zero);
    let mut fixed = Vec::new();
    for (kind, n) in d.neighbors_typed() {
        if s4.iter().all(|g| act(g, &n, DEFAULT_PRECISION).unwrap() == n) {
            fixed.push((kind, s4_vertex_type(&s4, &n, DEFAULT_PRECISION).unwrap()));
        }
    }
    assert_eq!(fixed.len(), 2);
    let kinds: Vec<S4Kind> = fixed.iter().map(|(_, t): &(NeighborKind, S4Type)| t.kind).collect();
    assert!(kinds.contains(&S4Kind::P) && kinds.contains(&S4Kind::L));
}
