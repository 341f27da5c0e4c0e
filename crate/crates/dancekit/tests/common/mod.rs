//! Seeded corpus generators shared by the integration suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dancekit::braid::braid_permutation;
use dancekit::diagram::{BraidWord, GaussSequence, Role, StrandEvent};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform shuffle of {U1,O1,...,Uc,Oc}; every shuffle is a valid
/// sequence and canonical relabeling normalizes it.
pub fn random_gauss(rng: &mut ChaCha8Rng, min_crossings: usize, max_crossings: usize) -> GaussSequence {
    let c = rng.gen_range(min_crossings..=max_crossings);
    let mut events: Vec<StrandEvent> = (1..=c as u32)
        .flat_map(|x| {
            [
                StrandEvent::new(x, Role::Under),
                StrandEvent::new(x, Role::Over),
            ]
        })
        .collect();
    events.shuffle(rng);
    GaussSequence::new(events).expect("shuffled role pairs are valid")
}

/// Rejection-samples a braid word whose closure is a knot.
pub fn random_knot_braid(
    rng: &mut ChaCha8Rng,
    max_strands: usize,
    max_len: usize,
) -> BraidWord {
    loop {
        let n = rng.gen_range(2..=max_strands);
        let len = rng.gen_range(n - 1..=max_len);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n) as i32;
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let word = BraidWord::new(n, letters).expect("letters in range");
        if braid_permutation(&word).is_full_cycle() {
            return word;
        }
    }
}

/// Every diagram the bundled census yields: PD traversals and braid
/// closures, labeled for error reporting.
pub fn census_diagrams() -> Vec<(String, GaussSequence)> {
    let load = dancekit::census::bundled();
    let mut out = Vec::new();
    for record in &load.records {
        if let Some(pd) = &record.pd {
            out.push((
                format!("{} (pd)", record.name),
                pd.to_gauss().expect("bundled pd codes are knots"),
            ));
        }
        if let Some(braid) = &record.braid {
            out.push((
                format!("{} (closure)", record.name),
                dancekit::braid::braid_closure(braid).expect("bundled braids close to knots"),
            ));
        }
    }
    out
}
