use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use super::DatasetError;
use crate::morphology::Alphabet;

/// Column layout of a tagged corpus: one token per line, tab-separated,
/// 0-based column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusConfig {
    pub surface_col: usize,
    pub pos_col: usize,
    /// When set, the lemma is collected next to the surface form.
    pub lemma_col: Option<usize>,
    pub noun_tags: BTreeSet<String>,
    pub verb_tags: BTreeSet<String>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            surface_col: 0,
            pos_col: 1,
            lemma_col: None,
            noun_tags: ["N", "NN", "NOUN"].into_iter().map(String::from).collect(),
            verb_tags: ["V", "VB", "VERB"].into_iter().map(String::from).collect(),
        }
    }
}

impl CorpusConfig {
    fn min_columns(&self) -> usize {
        self.surface_col
            .max(self.pos_col)
            .max(self.lemma_col.unwrap_or(0))
            + 1
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub noun_set: BTreeSet<String>,
    pub verb_set: BTreeSet<String>,
    pub token_counts: BTreeMap<String, u64>,
}

impl Corpus {
    pub fn is_empty(&self) -> bool {
        self.token_counts.is_empty()
    }
}

/// Reads a tagged corpus. Blank lines are skipped; tokens are stored with
/// canonical final-letter spelling.
pub fn ingest_corpus<R: BufRead>(
    reader: R,
    config: &CorpusConfig,
    alphabet: &Alphabet,
) -> Result<Corpus, DatasetError> {
    let mut corpus = Corpus::default();
    let need = config.min_columns();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|_| DatasetError::MalformedLine(line_no))?;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cols.len() < need
            || cols[config.surface_col].is_empty()
            || cols[config.pos_col].is_empty()
        {
            return Err(DatasetError::MalformedLine(line_no));
        }
        let token = alphabet.normalize(cols[config.surface_col]);
        *corpus.token_counts.entry(token.clone()).or_insert(0) += 1;
        let tag = cols[config.pos_col];
        let mut forms = vec![token];
        if let Some(c) = config.lemma_col {
            if !cols[c].is_empty() && cols[c] != "-" {
                forms.push(alphabet.normalize(cols[c]));
            }
        }
        let set = if config.noun_tags.contains(tag) {
            &mut corpus.noun_set
        } else if config.verb_tags.contains(tag) {
            &mut corpus.verb_set
        } else {
            continue;
        };
        set.extend(forms);
    }
    if corpus.is_empty() {
        return Err(DatasetError::EmptyCorpus);
    }
    Ok(corpus)
}
