//! Writes the bundled synthetic corpus (`data/synthetic40.json`) to stdout.
//!
//! Forty-two witnesses copy three base passages with random spelling
//! changes: A and C copies are heavily respelled, B copies only lightly.
//! Two witnesses are listed as excluded. Output is fully determined by the
//! seed.
//!
//!     cargo run -p editstat --example synthetic_corpus > data/synthetic40.json

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const AB_TEXT: [&str; 11] = [
    "Meires and maceres that menes ben bitwene",
    "The kyng and the comune to kepe the lawes",
    "To punyschen on pillories and pynnyng stoles",
    "Brewesteres and bakesteres bocheres and cokes",
    "For thise aren men on this molde that moste harme worcheth",
    "To the pore peple that parcel-mele buggen",
    "For they poyssoun the peple priueliche and oft",
    "Thei rychen thorw regraterye and rentes hem buggen",
    "With that the pore people schulde put in here wombe",
    "For toke thei on trewly thei tymbred nouzt so heiȝe",
    "Ne bouzte non burgages be ȝe ful certeyne",
];

const C_TEXT: [&str; 9] = [
    "ȝut Mede myldeliche the meyre hue bysouhte",
    "Bothe shereues and seriauns and suche as kepeth lawes",
    "To punyshen on pillories and on pynnyng-stoles",
    "As bakers and brewers bouchers and cokes",
    "For thees men doth most harme to the mene puple",
    "Richen thorw regratrye and rentes hem byggen",
    "With that the poure puple sholde putten in hure womben",
    "For toke they on triweliche they tymbred nat so heye",
    "Nother bouhten hem burgages be ȝe ful certayn",
];

const VOWELS: [char; 6] = ['a', 'e', 'i', 'o', 'u', 'y'];

fn respell(word: &str, rng: &mut ChaCha8Rng) -> String {
    let mut chars: Vec<char> = word.chars().collect();
    match rng.random_range(0..5) {
        0 => {
            let vowels: Vec<usize> = (0..chars.len())
                .filter(|&i| VOWELS.contains(&chars[i]))
                .collect();
            if !vowels.is_empty() {
                let i = vowels[rng.random_range(0..vowels.len())];
                chars[i] = VOWELS[rng.random_range(0..VOWELS.len())];
            }
        }
        1 => chars.push('e'),
        2 if chars.len() > 3 => {
            chars.remove(rng.random_range(1..chars.len()));
        }
        3 => {
            let i = rng.random_range(0..chars.len());
            let c = chars[i];
            chars.insert(i, c);
        }
        _ => {
            let s: String = chars.iter().collect();
            let s = if s.contains("th") {
                s.replacen("th", "þ", 1)
            } else if s.contains('y') {
                s.replacen('y', "ȝ", 1)
            } else {
                s.replacen('u', "w", 1)
            };
            chars = s.chars().collect();
        }
    }
    chars.into_iter().collect()
}

fn copy(text: &[&str], rate: f64, rng: &mut ChaCha8Rng) -> Vec<String> {
    text.iter()
        .map(|line| {
            line.split(' ')
                .map(|w| {
                    if rng.random_bool(rate) {
                        respell(w, rng)
                    } else {
                        w.to_owned()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

fn roman(mut n: usize) -> String {
    const TABLE: [(usize, &str); 7] = [
        (50, "L"),
        (40, "XL"),
        (10, "X"),
        (9, "IX"),
        (5, "V"),
        (4, "IV"),
        (1, "I"),
    ];
    let mut out = String::new();
    for (value, glyph) in TABLE {
        while n >= value {
            out.push_str(glyph);
            n -= value;
        }
    }
    out
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1885);
    let plan: [(&str, usize, f64, &[&str]); 3] = [
        ("A", 15, 0.35, &AB_TEXT),
        ("B", 14, 0.08, &AB_TEXT),
        ("C", 13, 0.30, &C_TEXT),
    ];
    let mut witnesses = Vec::new();
    for (version, count, rate, text) in plan {
        for _ in 0..count {
            let id = roman(witnesses.len() + 1);
            witnesses.push(json!({
                "id": id,
                "version": version,
                "lines": copy(text, rate, &mut rng),
            }));
        }
    }
    // one A and one C copy lose their last line
    for index in [8usize, 33] {
        witnesses[index]["lines"].as_array_mut().unwrap().pop();
    }
    let doc = json!({
        "witnesses": witnesses,
        "excluded": [
            { "id": roman(9), "reason": "missing the last line" },
            { "id": roman(34), "reason": "missing the last line" },
        ],
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
}
