//! Building (noun, denominal verb, root-derived verbs) data points from a
//! tagged corpus, filtering them by attestation, and the manual review
//! round-trip.

mod corpus;
mod generate;
mod review;

pub use corpus::{ingest_corpus, Corpus, CorpusConfig};
pub use generate::{attestation_filter, generate_candidates, Candidates, FunnelReport};
pub use review::{
    export_for_review, import_review, read_dataset, review_text, write_dataset, REVIEW_HEADER,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::morphology::{MorphologyError, Root, SurfaceForm, TemplateInventory};

pub const MAX_ROOT_VERBS: usize = 5;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("corpus line {0} is malformed")]
    MalformedLine(usize),
    #[error("corpus has no tagged tokens")]
    EmptyCorpus,
    #[error("review file line {line}: {message}")]
    MalformedReviewFile { line: usize, message: String },
    #[error("invalid data point: {0}")]
    InvalidPoint(String),
    #[error("nothing to export")]
    NothingToExport,
    #[error(transparent)]
    Morphology(#[from] MorphologyError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Status {
    #[default]
    Auto,
    Kept,
    Discarded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Auto => "auto",
            Status::Kept => "kept",
            Status::Discarded => "discarded",
        }
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Status::Auto),
            "kept" => Ok(Status::Kept),
            "discarded" => Ok(Status::Discarded),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One noun with its denominal verb and the verbs built on the bare root.
///
/// Forms are kept as spelled strings so synthetic points (whose "templates"
/// are not in any inventory) travel through the same files and tests.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DataPoint {
    pub noun: String,
    pub noun_template: String,
    /// The form looked up in an embedding space (e.g. the plural).
    pub noun_lookup_form: String,
    /// Root consonants written together, e.g. `xfv`.
    pub root: String,
    pub denominal: String,
    pub denominal_template: String,
    pub root_verbs: Vec<String>,
    pub status: Status,
}

fn clean_field(name: &str, v: &str) -> Result<(), DatasetError> {
    if v.is_empty() || v.contains(['\t', '\n', '\r']) {
        return Err(DatasetError::InvalidPoint(format!(
            "{name} {v:?} is empty or has a tab or newline"
        )));
    }
    Ok(())
}

impl DataPoint {
    /// Checks the structural invariants: 1 to 5 root verbs, none equal to
    /// the denominal, no duplicates, and fields that fit the review format.
    pub fn new(
        noun: SurfacePair,
        root: String,
        denominal: SurfacePair,
        root_verbs: Vec<String>,
        noun_lookup_form: String,
        status: Status,
    ) -> Result<Self, DatasetError> {
        let p = DataPoint {
            noun: noun.text,
            noun_template: noun.template,
            noun_lookup_form,
            root,
            denominal: denominal.text,
            denominal_template: denominal.template,
            root_verbs,
            status,
        };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<(), DatasetError> {
        for (name, v) in [
            ("noun", &self.noun),
            ("noun_template", &self.noun_template),
            ("noun_lookup_form", &self.noun_lookup_form),
            ("root", &self.root),
            ("denominal", &self.denominal),
            ("denominal_template", &self.denominal_template),
        ] {
            clean_field(name, v)?;
        }
        let k = self.root_verbs.len();
        if !(1..=MAX_ROOT_VERBS).contains(&k) {
            return Err(DatasetError::InvalidPoint(format!(
                "{} has {k} root verbs",
                self.noun
            )));
        }
        for (i, v) in self.root_verbs.iter().enumerate() {
            clean_field("root verb", v)?;
            if v.contains(',') {
                return Err(DatasetError::InvalidPoint(format!(
                    "root verb {v:?} contains a comma"
                )));
            }
            if *v == self.denominal {
                return Err(DatasetError::InvalidPoint(format!(
                    "root verb {v:?} equals the denominal"
                )));
            }
            if self.root_verbs[..i].contains(v) {
                return Err(DatasetError::InvalidPoint(format!(
                    "root verb {v:?} listed twice"
                )));
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.root_verbs.len()
    }

    /// Checks the morphological invariants against `inventory`: the noun
    /// parses to the root, the denominal is built on the noun's augmented
    /// root, and each root verb is a root-verb template applied to the root.
    pub fn verify_against(&self, inventory: &TemplateInventory) -> Result<(), DatasetError> {
        let bad = |m: String| Err(DatasetError::InvalidPoint(m));
        let alphabet = inventory.alphabet();
        let root = Root::parse(&self.root, alphabet)?;
        let nt = inventory.require(&self.noun_template)?;
        if !inventory.extract_roots(&self.noun, nt).contains(&root) {
            return bad(format!(
                "{} does not parse to {} under {}",
                self.noun, self.root, nt.id
            ));
        }
        let noun = SurfaceForm {
            text: self.noun.clone(),
            template_id: nt.id.clone(),
            root: root.clone(),
        };
        let droot = inventory.denominal_root(&noun)?;
        let dt = inventory.require(&self.denominal_template)?;
        if inventory.apply_template(&droot, dt)?.text != alphabet.normalize(&self.denominal) {
            return bad(format!("{} is not {} on {droot}", self.denominal, dt.id));
        }
        let derived: Vec<String> = inventory
            .root_verb_templates()
            .filter_map(|t| inventory.apply_template(&root, t).ok())
            .map(|s| s.text)
            .collect();
        for v in &self.root_verbs {
            if !derived.contains(&alphabet.normalize(v)) {
                return bad(format!("{v} is not a root-verb form of {}", self.root));
            }
        }
        Ok(())
    }

    /// Every form a vector lookup needs: noun lookup form, denominal, root verbs.
    pub fn lookup_tokens(&self) -> impl Iterator<Item = &str> {
        [self.noun_lookup_form.as_str(), self.denominal.as_str()]
            .into_iter()
            .chain(self.root_verbs.iter().map(String::as_str))
    }
}

/// Every lookup form of `points`, first occurrence first, one per line.
/// This is the word list a contextual-model exporter embeds.
pub fn word_list(points: &[DataPoint]) -> String {
    let mut seen = std::collections::HashSet::new();
    let mut out = String::new();
    for t in points.iter().flat_map(DataPoint::lookup_tokens) {
        if seen.insert(t) {
            out.push_str(t);
            out.push('\n');
        }
    }
    out
}

/// A spelled form with the id of the template that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePair {
    pub text: String,
    pub template: String,
}

impl SurfacePair {
    pub fn new(text: impl Into<String>, template: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            template: template.into(),
        }
    }
}

impl From<&SurfaceForm> for SurfacePair {
    fn from(s: &SurfaceForm) -> Self {
        Self {
            text: s.text.clone(),
            template: s.template_id.clone(),
        }
    }
}
