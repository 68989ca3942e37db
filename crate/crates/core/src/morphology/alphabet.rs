//! Letter inventories for unvocalized root-and-pattern orthographies.
//!
//! Letters are unicode strings (usually one scalar, but digraphs are allowed).
//! Words are tokenized by greedy longest match against the letter set and the
//! word-final variants.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use super::MorphologyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
    letter_set: BTreeSet<String>,
    finals: BTreeMap<String, String>,
    definals: BTreeMap<String, String>,
    sibilants: BTreeSet<String>,
    max_symbol_chars: usize,
}

impl Alphabet {
    pub fn new<L, F, S>(letters: L, finals: F, sibilants: S) -> Result<Self, MorphologyError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        F: IntoIterator<Item = (String, String)>,
        S: IntoIterator,
        S::Item: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        let mut letter_set = BTreeSet::new();
        for l in &letters {
            if l.is_empty() {
                return Err(MorphologyError::InvalidAlphabet(
                    "empty letter symbol".into(),
                ));
            }
            if l.chars().any(char::is_whitespace) {
                return Err(MorphologyError::InvalidAlphabet(format!(
                    "letter {l:?} contains whitespace"
                )));
            }
            if !letter_set.insert(l.clone()) {
                return Err(MorphologyError::InvalidAlphabet(format!(
                    "duplicate letter {l:?}"
                )));
            }
        }
        if letters.is_empty() {
            return Err(MorphologyError::InvalidAlphabet("no letters".into()));
        }

        let mut finals_map = BTreeMap::new();
        let mut definals = BTreeMap::new();
        for (base, variant) in finals {
            if !letter_set.contains(&base) {
                return Err(MorphologyError::InvalidAlphabet(format!(
                    "final form key {base:?} is not a letter"
                )));
            }
            if base == variant {
                return Err(MorphologyError::InvalidAlphabet(format!(
                    "letter {base:?} maps to itself"
                )));
            }
            if variant.is_empty() || letter_set.contains(&variant) {
                return Err(MorphologyError::InvalidAlphabet(format!(
                    "final variant {variant:?} collides with a base letter"
                )));
            }
            if definals.insert(variant.clone(), base.clone()).is_some() {
                return Err(MorphologyError::InvalidAlphabet(format!(
                    "final variant {variant:?} used twice"
                )));
            }
            finals_map.insert(base, variant);
        }

        let mut sibilant_set = BTreeSet::new();
        for s in sibilants {
            let s = s.into();
            if !letter_set.contains(&s) {
                return Err(MorphologyError::InvalidAlphabet(format!(
                    "sibilant {s:?} is not a letter"
                )));
            }
            sibilant_set.insert(s);
        }

        let max_symbol_chars = letters
            .iter()
            .chain(definals.keys())
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);

        Ok(Self {
            letters,
            letter_set,
            finals: finals_map,
            definals,
            sibilants: sibilant_set,
            max_symbol_chars,
        })
    }

    /// The 22 letters of unpointed Hebrew with the five word-final forms.
    ///
    /// Only samekh and shin metathesize with the reflexive /t/. Tsadi and zayin
    /// also trigger voicing of the /t/, which is not modeled.
    pub fn hebrew() -> Self {
        let letters = "אבגדהוזחטיכלמנסעפצקרשת".chars().map(String::from);
        let finals = [('כ', 'ך'), ('מ', 'ם'), ('נ', 'ן'), ('פ', 'ף'), ('צ', 'ץ')]
            .into_iter()
            .map(|(b, f)| (b.to_string(), f.to_string()));
        Self::new(letters, finals, ["ס", "ש"]).expect("built-in Hebrew alphabet is valid")
    }

    /// Lower-case Latin letters plus `š`, for transliterated fixtures.
    /// No final forms; `s`, `š` and `z` are sibilants.
    pub fn latin() -> Self {
        let letters = ('a'..='z')
            .map(String::from)
            .chain(std::iter::once("š".to_string()));
        Self::new(letters, std::iter::empty(), ["s", "š", "z"])
            .expect("built-in Latin alphabet is valid")
    }

    /// Parses an alphabet description:
    ///
    /// ```text
    /// letters a b c d
    /// final k=K m=M
    /// sibilants s z
    /// ```
    ///
    /// `#` starts a comment line; `final` and `sibilants` are optional.
    pub fn parse(text: &str) -> Result<Self, MorphologyError> {
        let mut letters = None;
        let mut finals = Vec::new();
        let mut sibilants = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let key = fields.next().unwrap_or_default();
            match key {
                "letters" => letters = Some(fields.map(str::to_string).collect::<Vec<_>>()),
                "final" => {
                    for pair in fields {
                        let (b, f) = pair.split_once('=').ok_or_else(|| {
                            MorphologyError::InvalidAlphabet(format!(
                                "line {}: final form {pair:?} is not base=variant",
                                idx + 1
                            ))
                        })?;
                        finals.push((b.to_string(), f.to_string()));
                    }
                }
                "sibilants" => sibilants.extend(fields.map(str::to_string)),
                other => {
                    return Err(MorphologyError::InvalidAlphabet(format!(
                        "line {}: unknown key {other:?}",
                        idx + 1
                    )))
                }
            }
        }
        let letters = letters
            .ok_or_else(|| MorphologyError::InvalidAlphabet("missing `letters` line".into()))?;
        Self::new(letters, finals, sibilants)
    }

    /// Resolves `hebrew`, `latin`, or a path to an alphabet file.
    pub fn from_spec(spec: &str) -> Result<Self, MorphologyError> {
        match spec {
            "hebrew" => Ok(Self::hebrew()),
            "latin" => Ok(Self::latin()),
            path => {
                let text = fs::read_to_string(Path::new(path)).map_err(|e| {
                    MorphologyError::InvalidAlphabet(format!("cannot read {path}: {e}"))
                })?;
                Self::parse(&text)
            }
        }
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn is_letter(&self, symbol: &str) -> bool {
        self.letter_set.contains(symbol)
    }

    pub fn is_sibilant(&self, symbol: &str) -> bool {
        self.sibilants.contains(symbol)
    }

    /// Maps a word-final variant back to its base letter; other symbols pass through.
    pub fn base_form<'a>(&'a self, symbol: &'a str) -> &'a str {
        self.definals
            .get(symbol)
            .map(String::as_str)
            .unwrap_or(symbol)
    }

    pub fn final_form<'a>(&'a self, symbol: &'a str) -> &'a str {
        self.finals
            .get(symbol)
            .map(String::as_str)
            .unwrap_or(symbol)
    }

    fn longest_symbol_at(&self, chars: &[char], at: usize) -> Option<usize> {
        let max = self.max_symbol_chars.min(chars.len() - at);
        (1..=max).rev().find(|&len| {
            let candidate: String = chars[at..at + len].iter().collect();
            self.letter_set.contains(&candidate) || self.definals.contains_key(&candidate)
        })
    }

    /// Splits a word into letter symbols (final variants kept as written).
    /// Returns `None` if any part of the word is outside the alphabet.
    pub fn tokenize(&self, word: &str) -> Option<Vec<String>> {
        let chars: Vec<char> = word.chars().collect();
        let mut out = Vec::with_capacity(chars.len());
        let mut at = 0;
        while at < chars.len() {
            let len = self.longest_symbol_at(&chars, at)?;
            out.push(chars[at..at + len].iter().collect());
            at += len;
        }
        Some(out)
    }

    /// Like [`Alphabet::tokenize`], but unknown characters become single-char symbols.
    pub fn tokenize_lossy(&self, word: &str) -> Vec<String> {
        let chars: Vec<char> = word.chars().collect();
        let mut out = Vec::with_capacity(chars.len());
        let mut at = 0;
        while at < chars.len() {
            let len = self.longest_symbol_at(&chars, at).unwrap_or(1);
            out.push(chars[at..at + len].iter().collect());
            at += len;
        }
        out
    }

    /// Replaces every final variant by its base letter.
    pub fn definalize(&self, symbols: &mut [String]) {
        for s in symbols.iter_mut() {
            if let Some(base) = self.definals.get(s.as_str()) {
                *s = base.clone();
            }
        }
    }

    /// Joins base-letter symbols into a word, using the final variant for the last letter.
    pub fn spell(&self, symbols: &[String]) -> String {
        let mut out = String::new();
        if let Some((last, init)) = symbols.split_last() {
            for s in init {
                out.push_str(self.base_form(s));
            }
            out.push_str(self.final_form(self.base_form(last)));
        }
        out
    }

    /// Canonical spelling: base letters everywhere except a final variant word-finally.
    pub fn normalize(&self, word: &str) -> String {
        let mut symbols = self.tokenize_lossy(word);
        self.definalize(&mut symbols);
        self.spell(&symbols)
    }

    /// Tokenizes and de-finalizes; `None` if the word has symbols outside the alphabet.
    pub fn base_symbols(&self, word: &str) -> Option<Vec<String>> {
        let mut symbols = self.tokenize(word)?;
        self.definalize(&mut symbols);
        Some(symbols)
    }

    pub(crate) fn final_pairs(&self) -> impl Iterator<Item = (&String, &String)> {
        self.finals.iter()
    }

    pub(crate) fn sibilants(&self) -> impl Iterator<Item = &String> {
        self.sibilants.iter()
    }
}

impl std::fmt::Display for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "letters {}", self.letters.join(" "))?;
        if !self.finals.is_empty() {
            let pairs: Vec<String> = self
                .final_pairs()
                .map(|(b, v)| format!("{b}={v}"))
                .collect();
            writeln!(f, "final {}", pairs.join(" "))?;
        }
        if !self.sibilants.is_empty() {
            let s: Vec<&str> = self.sibilants().map(String::as_str).collect();
            writeln!(f, "sibilants {}", s.join(" "))?;
        }
        Ok(())
    }
}
