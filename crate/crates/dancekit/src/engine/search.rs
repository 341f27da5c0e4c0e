//! Candidate enumeration for the exact minimum search.
//!
//! For each size n the gap combinations are visited in lexicographic
//! order, Forward orientation before Reverse, and the first feasible
//! candidate wins; this pins the witness tie-break. The parallel path
//! splits the rank space of each (size, orientation) block into chunks
//! and uses `find_map_first`, which preserves the same leftmost-match
//! semantics.

use crate::diagram::GaussSequence;
use crate::engine::{
    feasible_starts, CutSet, MinDancers, Orientation, Scratch, Traversal,
};

/// Binomial coefficient, saturating at `u64::MAX`.
#[cfg_attr(not(feature = "parallel"), allow(dead_code))]
pub(crate) fn binomial(m: usize, k: usize) -> u64 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// First combination of size n in lexicographic order: 0,1,...,n-1.
fn first_combination(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Advances to the lexicographic successor over 0..m; false when done.
fn next_combination(comb: &mut [usize], m: usize) -> bool {
    let n = comb.len();
    let mut i = n;
    while i > 0 {
        i -= 1;
        if comb[i] < m - (n - i) {
            comb[i] += 1;
            for j in i + 1..n {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Combination of the given lexicographic rank (combinatorial number
/// system over ascending tuples).
#[cfg_attr(not(feature = "parallel"), allow(dead_code))]
fn unrank_combination(m: usize, n: usize, mut rank: u64) -> Vec<usize> {
    let mut comb = Vec::with_capacity(n);
    let mut x = 0usize;
    for i in 0..n {
        loop {
            let count = binomial(m - x - 1, n - i - 1);
            if rank < count {
                break;
            }
            rank -= count;
            x += 1;
        }
        comb.push(x);
        x += 1;
    }
    comb
}

fn starts_of(trav: &Traversal, gaps: &[usize], starts: &mut Vec<usize>) {
    starts.clear();
    starts.extend(gaps.iter().map(|&g| trav.start_position(g)));
}

fn scan_sequential(
    trav: &Traversal,
    m: usize,
    n: usize,
    scratch: &mut Scratch,
) -> Option<Vec<usize>> {
    let mut comb = first_combination(n);
    let mut starts = Vec::with_capacity(n);
    loop {
        starts_of(trav, &comb, &mut starts);
        if feasible_starts(trav, &starts, scratch) {
            return Some(comb);
        }
        if !next_combination(&mut comb, m) {
            return None;
        }
    }
}

#[cfg(feature = "parallel")]
fn scan_parallel(trav: &Traversal, m: usize, n: usize) -> Option<Vec<usize>> {
    use rayon::prelude::*;
    use std::cell::RefCell;

    const CHUNK: u64 = 4096;
    let total = binomial(m, n);
    if total <= 2 * CHUNK {
        let mut scratch = Scratch::default();
        return scan_sequential(trav, m, n, &mut scratch);
    }

    thread_local! {
        static SCRATCH: RefCell<Scratch> = RefCell::new(Scratch::default());
    }

    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .find_map_first(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut comb = unrank_combination(m, n, lo);
            let mut starts = Vec::with_capacity(n);
            SCRATCH.with(|cell| {
                let scratch = &mut cell.borrow_mut();
                for _ in lo..hi {
                    starts_of(trav, &comb, &mut starts);
                    if feasible_starts(trav, &starts, scratch) {
                        return Some(comb);
                    }
                    next_combination(&mut comb, m);
                }
                None
            })
        })
}

fn search_size(trav: &Traversal, m: usize, n: usize, parallel: bool) -> Option<Vec<usize>> {
    if parallel {
        #[cfg(feature = "parallel")]
        {
            return scan_parallel(trav, m, n);
        }
    }
    let _ = parallel;
    let mut scratch = Scratch::default();
    scan_sequential(trav, m, n, &mut scratch)
}

/// Exact minimum over all cut sizes, orientations and gap combinations.
pub(crate) fn search_min(seq: &GaussSequence, parallel: bool) -> MinDancers {
    if seq.is_empty() {
        return MinDancers {
            count: 1,
            witness: CutSet::conventional(),
        };
    }
    let m = seq.len();
    let c = seq.crossings();
    let forward = Traversal::new(seq, Orientation::Forward);
    let reverse = Traversal::new(seq, Orientation::Reverse);
    for n in 1..=c {
        for (orientation, trav) in [
            (Orientation::Forward, &forward),
            (Orientation::Reverse, &reverse),
        ] {
            if let Some(gaps) = search_size(trav, m, n, parallel) {
                let witness = CutSet::new(orientation, gaps).expect("distinct gaps");
                return MinDancers { count: n, witness };
            }
        }
    }
    // Theorem 2: the underpass cuts of size c are always feasible, so the
    // loop above cannot fall through.
    unreachable!("size-c candidates include the underpass cuts")
}
