mod common;

use common::{boundary_counts, cells, contact_graph_genus};
use jenga_core::game::canonicalize;
use jenga_core::geometry::connected_components;
use jenga_core::topology::defect_sum;
use jenga_core::{
    extract_boundary, genus_descartes, genus_euler, parse_box_description,
    serialize_box_description, validate_closed_surface, voxelize, Configuration, Level,
};
use proptest::prelude::*;

fn tower() -> impl Strategy<Value = Configuration> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1u32 << n), 1..=7).prop_map(move |masks| {
            Configuration::new(n, masks.into_iter().map(Level::from_bits).collect()).unwrap()
        })
    })
    // a lone level with a gap is two separate bars
    .prop_filter("connected", |c| c.levels_count() > 1 || c.levels()[0].runs() == 1)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 300,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn text_round_trip(c in tower()) {
        let text = serialize_box_description(&c);
        prop_assert_eq!(parse_box_description(&text).unwrap(), c);
    }

    #[test]
    fn towers_are_connected_closed_surfaces(c in tower()) {
        let s = extract_boundary(&voxelize(&c));
        prop_assert!(validate_closed_surface(&s).is_closed_surface);
        prop_assert_eq!(connected_components(&s).len(), 1);
    }

    #[test]
    fn genus_routes_agree_with_oracles(c in tower()) {
        let s = extract_boundary(&voxelize(&c));
        let oracle = boundary_counts(&cells(&c));
        prop_assert_eq!(s.euler_characteristic(), oracle.chi());
        prop_assert_eq!(defect_sum(&s), oracle.defect_quarter_turns);
        // four quarter turns per unit of Euler characteristic
        prop_assert_eq!(oracle.defect_quarter_turns, 4 * oracle.chi());
        let g = genus_euler(&s).unwrap();
        prop_assert_eq!(g, genus_descartes(&s).unwrap());
        prop_assert_eq!(g, contact_graph_genus(&c));
    }

    #[test]
    fn translation_does_not_change_the_surface(c in tower(), dx in -5i32..5, dy in -5i32..5, dz in 0i32..5) {
        let v = voxelize(&c);
        let a = extract_boundary(&v);
        let b = extract_boundary(&v.translated([dx, dy, dz]));
        prop_assert_eq!(a.vertex_count(), b.vertex_count());
        prop_assert_eq!(a.edge_count(), b.edge_count());
        prop_assert_eq!(a.face_count(), b.face_count());
        prop_assert_eq!(genus_euler(&a).unwrap(), genus_euler(&b).unwrap());
    }

    #[test]
    fn opposite_faces_balance(c in tower()) {
        // a closed cubical surface has as many +x faces as -x faces, and so on
        let s = extract_boundary(&voxelize(&c));
        let mut tally = [0i64; 3];
        for f in s.faces() {
            tally[f.normal.axis as usize] += if f.normal.positive { 1 } else { -1 };
        }
        prop_assert_eq!(tally, [0, 0, 0]);
        prop_assert_eq!(s.face_count() % 2, 0);
    }

    #[test]
    fn canonical_form_keeps_genus(c in tower()) {
        let g = genus_euler(&extract_boundary(&voxelize(&c))).unwrap();
        let canon = canonicalize(&c);
        prop_assert_eq!(genus_euler(&extract_boundary(&voxelize(&canon))).unwrap(), g);
        prop_assert_eq!(canonicalize(&canon), canon);
    }
}
