//! Independent brute-force reference for the minimum search.
//!
//! Everything here is deliberately written from scratch: its own segment
//! partition, its own explicit adjacency lists, a recursive DFS cycle
//! detector, and recursive subset enumeration. It shares no code with the
//! production search path, so the two can check each other.

use crate::diagram::{GaussSequence, Role};
use crate::engine::{CutSet, MinDancers, Orientation};

/// Dancer assignment per stored event for the given orientation and gaps:
/// walks the danced order once, switching dancers at each cut.
fn dancer_of_events(seq: &GaussSequence, orientation: Orientation, gaps: &[usize]) -> Vec<usize> {
    let m = seq.len();
    // Danced order as stored indices, and the gap index "in front of" each
    // danced step.
    let danced: Vec<(usize, usize)> = match orientation {
        // Stepping forward from gap g first dances stored event g.
        Orientation::Forward => (0..m).map(|p| (p, p)).collect(),
        // Stepping backward from gap g first dances stored event g-1.
        Orientation::Reverse => (0..m)
            .map(|p| {
                let gap = (m - p) % m;
                let stored = (gap + m - 1) % m;
                (gap, stored)
            })
            .collect(),
    };
    // Rotate so the walk begins at some cut, then assign dancers in the
    // order cuts are encountered.
    let first = danced
        .iter()
        .position(|(gap, _)| gaps.contains(gap))
        .expect("at least one cut");
    let mut dancer_by_gap = vec![usize::MAX; m];
    {
        let mut sorted = gaps.to_vec();
        sorted.sort_unstable();
        for (d, &g) in sorted.iter().enumerate() {
            dancer_by_gap[g] = d;
        }
    }
    let mut out = vec![usize::MAX; m];
    let mut current = usize::MAX;
    for k in 0..m {
        let (gap, stored) = danced[(first + k) % m];
        if dancer_by_gap[gap] != usize::MAX {
            current = dancer_by_gap[gap];
        }
        out[stored] = current;
    }
    out
}

/// Explicit successor lists: chain edges follow the danced direction
/// within a dancer, crossing edges point Under -> Over.
fn adjacency(seq: &GaussSequence, orientation: Orientation, gaps: &[usize]) -> Vec<Vec<usize>> {
    let m = seq.len();
    let dancer = dancer_of_events(seq, orientation, gaps);
    let mut succ = vec![Vec::new(); m];
    for stored in 0..m {
        // The event danced immediately after `stored` by the same dancer.
        let (next, boundary_gap) = match orientation {
            Orientation::Forward => ((stored + 1) % m, (stored + 1) % m),
            Orientation::Reverse => ((stored + m - 1) % m, stored),
        };
        if !gaps.contains(&boundary_gap) && dancer[stored] == dancer[next] {
            succ[stored].push(next);
        }
    }
    for x in 1..=seq.crossings() as u32 {
        let mut under = None;
        let mut over = None;
        for (i, ev) in seq.events().iter().enumerate() {
            if ev.crossing == x {
                match ev.role {
                    Role::Under => under = Some(i),
                    Role::Over => over = Some(i),
                }
            }
        }
        succ[under.unwrap()].push(over.unwrap());
    }
    succ
}

/// Three-color DFS cycle detection.
fn has_cycle(succ: &[Vec<usize>]) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    fn visit(v: usize, succ: &[Vec<usize>], color: &mut [Color]) -> bool {
        color[v] = Color::Gray;
        for &w in &succ[v] {
            match color[w] {
                Color::Gray => return true,
                Color::White => {
                    if visit(w, succ, color) {
                        return true;
                    }
                }
                Color::Black => {}
            }
        }
        color[v] = Color::Black;
        false
    }
    let mut color = vec![Color::White; succ.len()];
    (0..succ.len()).any(|v| color[v] == Color::White && visit(v, succ, &mut color))
}

fn feasible(seq: &GaussSequence, orientation: Orientation, gaps: &[usize]) -> bool {
    !has_cycle(&adjacency(seq, orientation, gaps))
}

/// Recursive enumeration of all size-n gap subsets in lexicographic
/// order; returns the first feasible one.
fn first_feasible(
    seq: &GaussSequence,
    orientation: Orientation,
    chosen: &mut Vec<usize>,
    from: usize,
    n: usize,
) -> Option<Vec<usize>> {
    if chosen.len() == n {
        return feasible(seq, orientation, chosen).then(|| chosen.clone());
    }
    let m = seq.len();
    let still_needed = n - chosen.len();
    for g in from..=(m - still_needed) {
        chosen.push(g);
        if let Some(hit) = first_feasible(seq, orientation, chosen, g + 1, n) {
            return Some(hit);
        }
        chosen.pop();
    }
    None
}

/// Brute-force minimum: sizes 1..=2c, Forward before Reverse, subsets in
/// lexicographic order. Unlike the production search this does not lean
/// on the crossing-count bound; size 2c (every gap cut) is always
/// feasible because only the Under -> Over edges remain.
pub fn naive_min_dancers(seq: &GaussSequence) -> MinDancers {
    if seq.is_empty() {
        return MinDancers {
            count: 1,
            witness: CutSet::conventional(),
        };
    }
    let m = seq.len();
    for n in 1..=m {
        for orientation in [Orientation::Forward, Orientation::Reverse] {
            let mut chosen = Vec::with_capacity(n);
            if let Some(gaps) = first_feasible(seq, orientation, &mut chosen, 0, n) {
                return MinDancers {
                    count: n,
                    witness: CutSet::new(orientation, gaps).expect("distinct gaps"),
                };
            }
        }
    }
    unreachable!("cutting every gap leaves only Under -> Over edges")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecs::parse_gauss;

    #[test]
    fn oracle_trefoil() {
        let seq = parse_gauss("O1U2O3U1O2U3").unwrap();
        let r = naive_min_dancers(&seq);
        assert_eq!(r.count, 2);
    }

    #[test]
    fn oracle_kink_and_empty() {
        let seq = parse_gauss("O1U1").unwrap();
        let r = naive_min_dancers(&seq);
        assert_eq!(r.count, 1);
        assert_eq!(r.witness.gaps(), &[1]);
        assert_eq!(naive_min_dancers(&GaussSequence::empty()).count, 1);
    }

    #[test]
    fn oracle_agrees_with_production_on_small_cases() {
        for text in ["O1U1", "U1O1U2O2", "O1U2O3U1O2U3", "U1O2U3O1U2O3", "O1U2U1O2"] {
            let seq = parse_gauss(text).unwrap();
            let naive = naive_min_dancers(&seq);
            let fast = crate::engine::min_dancers(&seq);
            assert_eq!(naive, fast, "{text}");
        }
    }
}
