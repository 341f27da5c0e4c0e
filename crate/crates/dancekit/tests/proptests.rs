//! Property tests for the diagram transforms, codecs and engine laws.

use proptest::prelude::*;

use dancekit::codecs::{
    parse_braid, parse_gauss, parse_pd, serialize_braid, serialize_gauss, serialize_pd,
};
use dancekit::diagram::{BraidWord, GaussSequence, PdCode, Role, StrandEvent};
use dancekit::engine::{
    is_feasible, min_dancers, segments, underpass_cuts, CutSet, Orientation, PrecedenceGraph,
};

/// Random valid Gauss sequence: a shuffle of {U1,O1,...,Uc,Oc} is always
/// valid, and canonical relabeling makes it a uniform-ish valid sequence.
fn gauss_strategy(max_crossings: usize) -> impl Strategy<Value = GaussSequence> {
    (0..=max_crossings)
        .prop_flat_map(|c| {
            let events: Vec<(u32, bool)> = (1..=c as u32)
                .flat_map(|x| [(x, true), (x, false)])
                .collect();
            Just(events).prop_shuffle()
        })
        .prop_map(|events| {
            let events = events
                .into_iter()
                .map(|(x, under)| {
                    StrandEvent::new(x, if under { Role::Under } else { Role::Over })
                })
                .collect();
            GaussSequence::new(events).expect("shuffled role pairs are valid")
        })
}

fn braid_strategy(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands)
        .prop_flat_map(move |n| {
            let letter = (1..n as i32, any::<bool>())
                .prop_map(|(i, pos)| if pos { i } else { -i });
            (Just(n), prop::collection::vec(letter, 0..=max_len))
        })
        .prop_map(|(n, letters)| BraidWord::new(n, letters).expect("letters in range"))
}

proptest! {
    #[test]
    fn mirror_is_an_involution(seq in gauss_strategy(8)) {
        prop_assert_eq!(seq.mirror().mirror(), seq);
    }

    #[test]
    fn rotation_preserves_validity_and_closes(seq in gauss_strategy(8), k in 0i64..40) {
        let rotated = seq.rotate(k);
        prop_assert_eq!(rotated.crossings(), seq.crossings());
        prop_assert_eq!(seq.rotate(seq.len() as i64), seq.clone());
        // Rotating back lands on the original.
        prop_assert_eq!(rotated.rotate(-(k.rem_euclid(seq.len().max(1) as i64))), seq);
    }

    #[test]
    fn gauss_round_trip(seq in gauss_strategy(8)) {
        prop_assert_eq!(parse_gauss(&serialize_gauss(&seq)).unwrap(), seq);
    }

    #[test]
    fn pd_round_trip_through_text(seq in gauss_strategy(8)) {
        let pd = PdCode::from_gauss(&seq);
        prop_assert_eq!(parse_pd(&serialize_pd(&pd)).unwrap(), pd);
    }

    #[test]
    fn braid_round_trip(b in braid_strategy(5, 10)) {
        prop_assert_eq!(parse_braid(&serialize_braid(&b)).unwrap(), b);
    }

    #[test]
    fn pd_traversal_recovers_sequence(seq in gauss_strategy(8)) {
        let pd = PdCode::from_gauss(&seq);
        prop_assert_eq!(pd.to_gauss().unwrap(), seq);
    }

    /// Rotating a tuple by two slots or swapping its over-strand edges
    /// names the same geometric crossing; the traversal may start
    /// elsewhere or run backwards, but must describe the same diagram:
    /// a rotation of the sequence or of its reversal.
    #[test]
    fn pd_tuple_symmetries_name_same_diagram(seq in gauss_strategy(5), mask in prop::collection::vec(0u8..4, 0..10)) {
        let pd = PdCode::from_gauss(&seq);
        let tuples: Vec<[u32; 4]> = pd
            .tuples()
            .iter()
            .enumerate()
            .map(|(i, &[a, b, c, d])| match mask.get(i).copied().unwrap_or(0) {
                1 => [c, d, a, b],
                2 => [a, d, c, b],
                3 => [c, b, a, d],
                _ => [a, b, c, d],
            })
            .collect();
        let altered = PdCode::new(tuples).unwrap().to_gauss().unwrap();
        let reversed = GaussSequence::new(
            seq.events().iter().rev().copied().collect()
        ).unwrap();
        let m = seq.len().max(1) as i64;
        let hit = (0..m).any(|k| {
            altered == seq.rotate(k) || altered == reversed.rotate(k)
        });
        prop_assert!(hit, "altered traversal is not a rotation/reversal of the original");
    }

    #[test]
    fn underpass_cuts_always_feasible(seq in gauss_strategy(8)) {
        prop_assume!(!seq.is_empty());
        let cuts = underpass_cuts(&seq).unwrap();
        prop_assert_eq!(cuts.len(), seq.crossings());
        prop_assert!(is_feasible(&seq, &cuts).unwrap().is_feasible());
    }

    #[test]
    fn minimum_bounded_by_crossings(seq in gauss_strategy(6)) {
        prop_assume!(!seq.is_empty());
        let result = min_dancers(&seq);
        prop_assert!(result.count <= seq.crossings());
        prop_assert!(is_feasible(&seq, &result.witness).unwrap().is_feasible());
        prop_assert_eq!(result.witness.len(), result.count);
    }

    /// Adding cuts only removes chain edges, so feasibility is monotone.
    #[test]
    fn cut_monotonicity(seq in gauss_strategy(6), extra in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        prop_assume!(!seq.is_empty());
        let base = min_dancers(&seq).witness;
        let mut gaps: Vec<usize> = base.gaps().to_vec();
        for idx in extra {
            let g = idx.index(seq.len());
            if !gaps.contains(&g) {
                gaps.push(g);
            }
        }
        let bigger = CutSet::new(base.orientation(), gaps).unwrap();
        prop_assert!(is_feasible(&seq, &bigger).unwrap().is_feasible());
    }

    /// Reversing the orientation is the same as mirroring the diagram.
    #[test]
    fn mirror_reversal_duality(seq in gauss_strategy(6), raw in prop::collection::vec(any::<prop::sample::Index>(), 1..5)) {
        prop_assume!(!seq.is_empty());
        let gaps: std::collections::BTreeSet<usize> =
            raw.iter().map(|i| i.index(seq.len())).collect();
        let forward = CutSet::new(Orientation::Forward, gaps.iter().copied()).unwrap();
        let reverse = CutSet::new(Orientation::Reverse, gaps.iter().copied()).unwrap();
        let lhs = is_feasible(&seq, &forward).unwrap().is_feasible();
        let rhs = is_feasible(&seq.mirror(), &reverse).unwrap().is_feasible();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn min_dancers_mirror_invariant(seq in gauss_strategy(5)) {
        prop_assert_eq!(min_dancers(&seq.mirror()).count, min_dancers(&seq).count);
    }

    #[test]
    fn min_dancers_rotation_equivariant(seq in gauss_strategy(5), k in 0i64..12) {
        prop_assert_eq!(min_dancers(&seq.rotate(k)).count, min_dancers(&seq).count);
    }

    /// Structural invariants of the precedence graph.
    #[test]
    fn precedence_graph_edge_counts(seq in gauss_strategy(7), raw in prop::collection::vec(any::<prop::sample::Index>(), 1..6)) {
        prop_assume!(!seq.is_empty());
        let gaps: std::collections::BTreeSet<usize> =
            raw.iter().map(|i| i.index(seq.len())).collect();
        let cuts = CutSet::new(Orientation::Forward, gaps.iter().copied()).unwrap();
        let graph = PrecedenceGraph::build(&seq, &cuts).unwrap();
        prop_assert_eq!(graph.chain_edges().len(), seq.len() - cuts.len());
        prop_assert_eq!(graph.crossing_edges().len(), seq.crossings());
        let segs = segments(&seq, &cuts).unwrap();
        let total: usize = segs.iter().map(Vec::len).sum();
        prop_assert_eq!(total, seq.len());
    }
}
