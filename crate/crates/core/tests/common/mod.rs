#![allow(dead_code)]

use std::path::PathBuf;

use editstat::corpus::{Corpus, Normalization, Version, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

const BASE: [&str; 11] = [
    "meires and maceres that menes ben bitwene",
    "the kyng and the comune to kepe the lawes",
    "to punyschen on pillories and pynnyng stoles",
    "brewesteres and bakesteres bocheres and cokes",
    "for thise aren men on this molde that moste harme worcheth",
    "to the pore peple that parcel mele buggen",
    "for they poyssoun the peple priueliche and oft",
    "thei rychen thorw regraterye and rentes hem buggen",
    "with that the pore people schulde put in here wombe",
    "for toke thei on trewly thei tymbred nouzt so heiȝe",
    "ne bouzte non burgages be ȝe ful certeyne",
];

/// Applies `edits` random single-character edits.
pub fn mutate(rng: &mut ChaCha8Rng, s: &str, edits: usize) -> String {
    const ALPHABET: [char; 8] = ['a', 'e', 'i', 'o', 'u', 'y', 'þ', 'ȝ'];
    let mut chars: Vec<char> = s.chars().collect();
    for _ in 0..edits {
        let pos = rng.random_range(0..chars.len());
        let c = ALPHABET[rng.random_range(0..ALPHABET.len())];
        match rng.random_range(0..3) {
            0 => chars[pos] = c,
            1 => chars.insert(pos, c),
            _ => {
                if chars.len() > 1 {
                    chars.remove(pos);
                }
            }
        }
    }
    chars.into_iter().collect()
}

/// Witnesses copied from one base text with `rates[v]` edits per line on
/// average, `sizes[v]` witnesses per version.
pub fn copied_corpus(seed: u64, sizes: [usize; 3], rates: [usize; 3]) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    for (g, version) in Version::ALL.into_iter().enumerate() {
        for _ in 0..sizes[g] {
            let lines = BASE
                .iter()
                .map(|l| {
                    let edits = rng.random_range(0..=2 * rates[g]);
                    mutate(&mut rng, l, edits)
                })
                .collect();
            let id = format!("{version}{}", witnesses.len());
            witnesses.push(Witness::new(id, Some(version), lines));
        }
    }
    Corpus::new(witnesses, Normalization::default()).unwrap()
}

/// All three versions drawn from the same population.
pub fn null_corpus(seed: u64) -> Corpus {
    copied_corpus(seed, [8, 8, 8], [3, 3, 3])
}
