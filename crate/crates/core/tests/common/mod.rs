#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::PathBuf;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn lexicon_dir() -> PathBuf {
    fixtures().join("lexicon")
}

/// A lexicon row as read straight from the TSV, independent of the library.
#[derive(Clone, Debug)]
pub struct RawEntry {
    pub bare: String,
    pub vocalized: String,
    pub category: String,
    pub pos: String,
    pub lemma: String,
}

fn read_entries(name: &str) -> Vec<RawEntry> {
    fs::read_to_string(lexicon_dir().join(name))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            RawEntry {
                bare: f[0].into(),
                vocalized: f[1].into(),
                category: f[2].into(),
                pos: f[3].into(),
                lemma: f[4].into(),
            }
        })
        .collect()
}

fn read_pairs(name: &str) -> HashSet<(String, String)> {
    fs::read_to_string(lexicon_dir().join(name))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect()
}

/// Reading produced by the brute-force oracle: (diacritized form, prefix
/// vocalized, stem vocalized, suffix vocalized, pos, stem lemma).
pub type Reading = (String, String, String, String, String, String);

/// Brute-force triple loop over every (prefix, stem, suffix) entry with the
/// three table checks. Returns word -> readings in the documented order.
pub struct BruteForce {
    pub by_word: HashMap<String, Vec<Reading>>,
    pub alphabet: Vec<char>,
}

pub fn brute_force() -> BruteForce {
    let prefixes = read_entries("prefixes.tsv");
    let stems = read_entries("stems.tsv");
    let suffixes = read_entries("suffixes.tsv");
    let ab = read_pairs("ab.tsv");
    let ac = read_pairs("ac.tsv");
    let bc = read_pairs("bc.tsv");

    type Keyed = Vec<((usize, usize, usize, usize, usize), Reading)>;
    let mut keyed: HashMap<String, Keyed> = HashMap::new();
    for (pi, p) in prefixes.iter().enumerate() {
        for (si, s) in stems.iter().enumerate() {
            for (xi, x) in suffixes.iter().enumerate() {
                let pair = |a: &RawEntry, b: &RawEntry| (a.category.clone(), b.category.clone());
                if !ab.contains(&pair(p, s))
                    || !ac.contains(&pair(p, x))
                    || !bc.contains(&pair(s, x))
                {
                    continue;
                }
                let (pl, xl) = (p.bare.chars().count(), x.bare.chars().count());
                if pl > 4 || xl > 6 || s.bare.is_empty() {
                    continue;
                }
                let word = format!("{}{}{}", p.bare, s.bare, x.bare);
                let reading = (
                    format!("{}{}{}", p.vocalized, s.vocalized, x.vocalized),
                    p.vocalized.clone(),
                    s.vocalized.clone(),
                    x.vocalized.clone(),
                    s.pos.clone(),
                    s.lemma.clone(),
                );
                keyed
                    .entry(word)
                    .or_default()
                    .push(((pl, xl, pi, si, xi), reading));
            }
        }
    }
    let by_word = keyed
        .into_iter()
        .map(|(w, mut v)| {
            v.sort_by_key(|(k, _)| *k);
            (w, v.into_iter().map(|(_, r)| r).collect())
        })
        .collect();

    let mut alphabet: Vec<char> = prefixes
        .iter()
        .chain(&stems)
        .chain(&suffixes)
        .flat_map(|e| e.bare.chars())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    alphabet.sort_unstable();
    BruteForce { by_word, alphabet }
}

pub fn as_reading(a: &qamus::Analysis) -> Reading {
    (
        a.diacritized_form.clone(),
        a.prefix.vocalized.clone(),
        a.stem.vocalized.clone(),
        a.suffix.vocalized.clone(),
        a.pos.clone(),
        a.lemma_diacritized.clone(),
    )
}

/// Every string over `alphabet` of length 1..=max_len.
pub fn all_strings(alphabet: &[char], max_len: usize) -> impl Iterator<Item = String> + '_ {
    (1..=max_len).flat_map(move |len| {
        let total = alphabet.len().pow(len as u32);
        (0..total).map(move |mut n| {
            let mut s = String::with_capacity(len);
            for _ in 0..len {
                s.push(alphabet[n % alphabet.len()]);
                n /= alphabet.len();
            }
            s
        })
    })
}

/// Diacritic stripping written out independently of the library.
pub fn naive_strip(w: &str) -> String {
    w.chars().filter(|c| !"auiFNK~o`".contains(*c)).collect()
}

struct RefSlot {
    base: char,
    marks: Vec<char>,
}

fn ref_slots(form: &str) -> Option<Vec<RefSlot>> {
    let mut slots: Vec<RefSlot> = Vec::new();
    for c in form.chars() {
        if "auiFNK~o`".contains(c) {
            slots.last_mut()?.marks.push(c);
        } else {
            slots.push(RefSlot {
                base: c,
                marks: Vec::new(),
            });
        }
    }
    for s in &mut slots {
        let shadda = s.marks.iter().filter(|c| **c == '~').count();
        s.marks.retain(|c| *c != '~');
        for _ in 0..shadda {
            s.marks.insert(0, '~');
        }
    }
    Some(slots)
}

/// Reference agreement score, re-derived from the reconciliation rules:
/// returns (agreements, conflicts) or None when incomparable.
pub fn ref_score(corpus: &str, analysis: &str) -> Option<(u32, u32)> {
    let mut c = ref_slots(corpus)?;
    let a = ref_slots(analysis)?;
    let cb: String = c.iter().map(|s| s.base).collect();
    let ab: String = a.iter().map(|s| s.base).collect();
    if cb != ab {
        return None;
    }
    let n = c.len();
    if n > 0 {
        let last_is_case = c[n - 1].marks.last().is_some_and(|m| "auiFNK".contains(*m));
        if last_is_case {
            c[n - 1].marks.pop();
        } else if n > 1
            && c[n - 1].base == 'A'
            && c[n - 1].marks.is_empty()
            && c[n - 2].marks.last().is_some_and(|m| "FNK".contains(*m))
        {
            c[n - 2].marks.pop();
        }
    }
    let neutral = |slots: &[RefSlot], i: usize| -> bool {
        if let Some(next) = slots.get(i + 1) {
            if next.base == 'A' {
                return true;
            }
            if (next.base == 'w' || next.base == 'y')
                && !next.marks.iter().any(|m| "auiFNK".contains(*m))
            {
                return true;
            }
        }
        let b: Vec<char> = slots.iter().map(|s| s.base).collect();
        if b.len() > 2 && b[0] == 'A' && b[1] == 'l' && i == 1 {
            return true;
        }
        if !(b.len() > 2 && b[0] == 'A' && b[1] == 'l')
            && b.len() > 3
            && "wfbkl".contains(b[0])
            && b[1] == 'A'
            && b[2] == 'l'
            && i == 2
        {
            return true;
        }
        false
    };
    let (mut agree, mut conflict) = (0, 0);
    for i in 0..n {
        if c[i].marks.first() == Some(&'~') && a[i].marks.first() == Some(&'~') {
            agree += 1;
        }
        if neutral(&c, i) || neutral(&a, i) {
            continue;
        }
        let cv = c[i].marks.iter().rev().find(|m| **m != '~');
        let av = a[i].marks.iter().rev().find(|m| **m != '~');
        if let (Some(x), Some(y)) = (cv, av) {
            if x == y {
                agree += 1;
            } else {
                conflict += 1;
            }
        }
    }
    Some((agree, conflict))
}

/// Small deterministic generator for synthetic data.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// Random diacritized Buckwalter word: letters each followed by zero or one
/// short vowel/sukun, optional shadda, optional case ending.
pub fn random_word(rng: &mut Lcg) -> String {
    const LETTERS: &[char] = &[
        'b', 't', 'd', 'r', 's', 'k', 'l', 'm', 'n', 'w', 'y', 'A', 'q', 'p',
    ];
    const MARKS: &[&str] = &["", "a", "u", "i", "o", "~a", "~"];
    const ENDINGS: &[&str] = &["", "", "u", "i", "N", "K", "F"];
    let len = 1 + rng.below(4);
    let mut w = String::new();
    for _ in 0..len {
        w.push(LETTERS[rng.below(LETTERS.len())]);
        w.push_str(MARKS[rng.below(MARKS.len())]);
    }
    w.push_str(ENDINGS[rng.below(ENDINGS.len())]);
    w
}
