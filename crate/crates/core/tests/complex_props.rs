mod common;

use common::strategies::cat0_complex;
use cxc_core::complex::{build_complex, faces};
use cxc_core::format::{parse, serialize, Document};
use cxc_core::Cube;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn serialized_complexes_rebuild_exactly(x in cat0_complex()) {
        let text = serialize(&Document::from_complex(&x, None));
        let doc = parse(&text).unwrap();
        let cubes: Vec<Vec<usize>> = doc.cubes.iter().map(|c| c.corners.clone()).collect();
        prop_assert_eq!(build_complex(&cubes).unwrap(), x);
    }

    #[test]
    fn cubes_meet_in_common_faces(x in cat0_complex()) {
        let all: Vec<&Cube> = x.all_cubes().map(|(_, c)| c).collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                let mut shared: Vec<_> = a.corners().iter().filter(|v| b.corners().contains(v)).copied().collect();
                if shared.is_empty() {
                    continue;
                }
                shared.sort();
                prop_assert!(x.find(&shared).is_some(), "{:?} and {:?} share {:?}", a, b, shared);
            }
        }
    }

    #[test]
    fn every_face_of_a_stored_cube_is_stored(x in cat0_complex()) {
        for (_, c) in x.all_cubes() {
            for k in 0..c.dim() {
                for f in faces(c, k).unwrap() {
                    prop_assert!(x.contains(&f));
                }
            }
        }
    }
}
