use std::fmt;
use std::str::FromStr;

use super::{Alphabet, MorphologyError};

/// A consonantal root: 2 to 4 base letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    consonants: Vec<String>,
}

impl Root {
    pub const MIN_LEN: usize = 2;
    pub const MAX_LEN: usize = 4;

    pub fn new<I>(consonants: I, alphabet: &Alphabet) -> Result<Self, MorphologyError>
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let mut out = Vec::new();
        for c in consonants {
            let c: String = c.into();
            let base = alphabet.base_form(&c).to_string();
            if !alphabet.is_letter(&base) {
                return Err(MorphologyError::UnknownLetter(c));
            }
            out.push(base);
        }
        if !(Self::MIN_LEN..=Self::MAX_LEN).contains(&out.len()) {
            return Err(MorphologyError::RootLength(out.len()));
        }
        Ok(Self { consonants: out })
    }

    /// Parses a root written as a plain letter string, e.g. `xfv`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, MorphologyError> {
        let symbols = alphabet
            .tokenize(text)
            .ok_or_else(|| MorphologyError::UnknownLetter(text.to_string()))?;
        Self::new(symbols, alphabet)
    }

    pub fn consonants(&self) -> &[String] {
        &self.consonants
    }

    pub fn len(&self) -> usize {
        self.consonants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.consonants.is_empty()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.consonants {
            f.write_str(c)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pos {
    Noun,
    Adjective,
    VerbInfinitive,
    VerbInflected,
}

impl Pos {
    pub fn is_nominal(self) -> bool {
        matches!(self, Pos::Noun | Pos::Adjective)
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, Pos::VerbInfinitive | Pos::VerbInflected)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Adjective => "adjective",
            Pos::VerbInfinitive => "verb_infinitive",
            Pos::VerbInflected => "verb_inflected",
        }
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "noun" => Ok(Pos::Noun),
            "adjective" => Ok(Pos::Adjective),
            "verb_infinitive" => Ok(Pos::VerbInfinitive),
            "verb_inflected" => Ok(Pos::VerbInflected),
            other => Err(format!("unknown part of speech {other:?}")),
        }
    }
}

/// Systematic homography of a pattern in unvocalized spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AmbiguityClass {
    #[default]
    Unambiguous,
    /// Noun homographic with a root-derived imperative (`taCCiC`).
    ImperativeHomograph,
    /// Noun homographic with a present-tense root verb and a past-tense denominal.
    PresentOrDenominalHomograph,
    /// Noun homographic with a past-tense denominal.
    DenominalPastHomograph,
}

impl AmbiguityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            AmbiguityClass::Unambiguous => "unambiguous",
            AmbiguityClass::ImperativeHomograph => "imperative_homograph",
            AmbiguityClass::PresentOrDenominalHomograph => "present_or_denominal_homograph",
            AmbiguityClass::DenominalPastHomograph => "denominal_past_homograph",
        }
    }
}

impl FromStr for AmbiguityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "-" | "unambiguous" => Ok(AmbiguityClass::Unambiguous),
            "imperative_homograph" => Ok(AmbiguityClass::ImperativeHomograph),
            "present_or_denominal_homograph" => Ok(AmbiguityClass::PresentOrDenominalHomograph),
            "denominal_past_homograph" => Ok(AmbiguityClass::DenominalPastHomograph),
            other => Err(format!("unknown ambiguity class {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    /// Base letters (never final variants).
    Fixed(Vec<String>),
    /// 1-based root consonant index.
    Slot(usize),
}

/// A sequence of segments whose slots are exactly `1..=arity` in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    segments: Vec<Segment>,
    arity: usize,
}

impl Pattern {
    pub fn new(segments: Vec<Segment>) -> Result<Self, String> {
        let mut expected = 1;
        let mut merged: Vec<Segment> = Vec::with_capacity(segments.len());
        for seg in segments {
            match seg {
                Segment::Slot(i) => {
                    if i != expected {
                        return Err(format!(
                            "slot {{{i}}} out of order, expected {{{expected}}}"
                        ));
                    }
                    expected += 1;
                    merged.push(Segment::Slot(i));
                }
                Segment::Fixed(letters) if letters.is_empty() => {}
                Segment::Fixed(letters) => match merged.last_mut() {
                    Some(Segment::Fixed(prev)) => prev.extend(letters),
                    _ => merged.push(Segment::Fixed(letters)),
                },
            }
        }
        if expected == 1 {
            return Err("pattern has no root slot".into());
        }
        Ok(Self {
            segments: merged,
            arity: expected - 1,
        })
    }

    /// Parses `t{1}{2}i{3}` style notation.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, String> {
        let mut segments = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            if let Some(after) = rest.strip_prefix('{') {
                let close = after
                    .find('}')
                    .ok_or_else(|| format!("unclosed slot in {text:?}"))?;
                let idx: usize = after[..close]
                    .parse()
                    .map_err(|_| format!("bad slot index {:?}", &after[..close]))?;
                segments.push(Segment::Slot(idx));
                rest = &after[close + 1..];
            } else {
                let end = rest.find('{').unwrap_or(rest.len());
                let run = &rest[..end];
                let letters = alphabet
                    .base_symbols(run)
                    .ok_or_else(|| format!("letters {run:?} are not in the alphabet"))?;
                segments.push(Segment::Fixed(letters));
                rest = &rest[end..];
            }
        }
        Self::new(segments)
    }

    /// Appends fixed letters (used for suffix plurals).
    pub fn with_suffix(&self, suffix: &[String]) -> Self {
        let mut segments = self.segments.clone();
        segments.push(Segment::Fixed(suffix.to_vec()));
        Self::new(segments).expect("suffixing keeps slots valid")
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Base letters of all fixed segments, in order.
    pub fn fixed_letters(&self) -> impl Iterator<Item = &String> {
        self.segments.iter().flat_map(|s| match s {
            Segment::Fixed(l) => l.as_slice(),
            Segment::Slot(_) => &[],
        })
    }

    /// Writes the pattern back in brace notation, spelling a word-final fixed
    /// letter with its final variant.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        let last = self.segments.len().saturating_sub(1);
        for (i, seg) in self.segments.iter().enumerate() {
            match seg {
                Segment::Slot(n) => out.push_str(&format!("{{{n}}}")),
                Segment::Fixed(letters) if i == last => out.push_str(&alphabet.spell(letters)),
                Segment::Fixed(letters) => letters.iter().for_each(|l| out.push_str(l)),
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PluralPattern {
    /// Letters appended to the de-finalized singular, e.g. `+im`.
    Suffix(Vec<String>),
    /// A full alternate pattern.
    Pattern(Pattern),
}

/// One arity-specific realization of a template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternVariant {
    pub pattern: Pattern,
    pub plural: Option<PluralPattern>,
    /// `(tag, pattern)`; every pattern has the same arity as `pattern`.
    pub inflections: Vec<(String, Pattern)>,
}

impl PatternVariant {
    pub fn arity(&self) -> usize {
        self.pattern.arity()
    }

    /// The plural as a full pattern.
    pub fn plural_pattern(&self) -> Option<Pattern> {
        self.plural.as_ref().map(|p| match p {
            PluralPattern::Suffix(s) => self.pattern.with_suffix(s),
            PluralPattern::Pattern(p) => p.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub id: String,
    pub pos: Pos,
    pub variants: Vec<PatternVariant>,
    /// Letters contributed by a nominal pattern that a denominal verb incorporates.
    pub templatic_consonants: Vec<String>,
    pub ambiguity: AmbiguityClass,
    /// Fixed letter that swaps with a sibilant first root consonant.
    pub metathesis: Option<String>,
    /// Denominal verb templates derivable from this nominal template.
    pub denominal_targets: Vec<String>,
    /// One of the infinitival templates used to build root-derived verbs.
    pub root_verb: bool,
    /// Nouns of this template are looked up in their plural.
    pub lookup_plural: bool,
}

impl Template {
    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.variants.iter().map(PatternVariant::arity)
    }

    pub fn supports_arity(&self, arity: usize) -> bool {
        self.arities().any(|a| a == arity)
    }

    pub fn variant(&self, arity: usize) -> Option<&PatternVariant> {
        self.variants.iter().find(|v| v.arity() == arity)
    }

    pub fn has_plural(&self) -> bool {
        self.variants.iter().any(|v| v.plural.is_some())
    }
}

/// A generated word together with the analysis that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceForm {
    pub text: String,
    pub template_id: String,
    pub root: Root,
}
