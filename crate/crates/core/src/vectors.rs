//! Static word-vector files (word2vec/fastText text with a header line, GloVe
//! text without one) and dataset coverage.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::datasetgen::DataPoint;
use crate::morphology::Alphabet;

#[derive(Debug, Error)]
pub enum VectorError {
    #[error("line {0}: wrong number of components")]
    DimensionMismatch(usize),
    #[error("line {0}: component is not a finite number")]
    NonNumericComponent(usize),
    #[error("vector file is empty")]
    EmptyFile,
    #[error("line {0}: malformed header")]
    BadHeader(usize),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Auto,
    Word2VecText,
    GloveText,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Format::Auto),
            "word2vec" | "word2vec_text" | "fasttext" => Ok(Format::Word2VecText),
            "glove" | "glove_text" => Ok(Format::GloveText),
            other => Err(format!("unknown vector format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSpace {
    dim: usize,
    tokens: Vec<String>,
    data: Vec<f64>,
    index: HashMap<String, usize>,
    pub source_label: String,
    /// Rows whose token had already appeared; the later row wins.
    pub duplicates: usize,
    normalizer: Option<Alphabet>,
}

fn is_header(line: &str) -> bool {
    let f: Vec<&str> = line.split_whitespace().collect();
    f.len() == 2 && f.iter().all(|x| x.parse::<u64>().is_ok())
}

impl EmbeddingSpace {
    pub fn new(dim: usize, label: impl Into<String>) -> Self {
        Self {
            dim,
            tokens: Vec::new(),
            data: Vec::new(),
            index: HashMap::new(),
            source_label: label.into(),
            duplicates: 0,
            normalizer: None,
        }
    }

    /// Inserts or replaces a vector. Panics if its length is not `dim`.
    pub fn insert(&mut self, token: &str, v: &[f64]) {
        assert_eq!(
            v.len(),
            self.dim,
            "vector for {token:?} has the wrong length"
        );
        let key = self.key(token);
        match self.index.get(&key) {
            Some(&i) => {
                self.duplicates += 1;
                self.tokens[i] = token.to_string();
                self.data[i * self.dim..(i + 1) * self.dim].copy_from_slice(v);
            }
            None => {
                self.index.insert(key, self.tokens.len());
                self.tokens.push(token.to_string());
                self.data.extend_from_slice(v);
            }
        }
    }

    pub fn parse(text: &str, format: Format, label: &str) -> Result<Self, VectorError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .peekable();
        let Some(&(first_no, first)) = lines.peek() else {
            return Err(VectorError::EmptyFile);
        };
        let header = match format {
            Format::Word2VecText => true,
            Format::GloveText => false,
            Format::Auto => is_header(first),
        };
        let mut dim = None;
        if header {
            lines.next();
            let f: Vec<&str> = first.split_whitespace().collect();
            if f.len() != 2 {
                return Err(VectorError::BadHeader(first_no + 1));
            }
            let d: usize = f[1]
                .parse()
                .map_err(|_| VectorError::BadHeader(first_no + 1))?;
            if d == 0 {
                return Err(VectorError::BadHeader(first_no + 1));
            }
            dim = Some(d);
        }
        let mut space: Option<EmbeddingSpace> = None;
        let mut row = Vec::new();
        for (i, line) in lines {
            let line_no = i + 1;
            let mut fields = line.split_whitespace();
            let token = fields.next().expect("non-blank line");
            row.clear();
            for f in fields {
                let x: f64 = f
                    .parse()
                    .map_err(|_| VectorError::NonNumericComponent(line_no))?;
                if !x.is_finite() {
                    return Err(VectorError::NonNumericComponent(line_no));
                }
                row.push(x);
            }
            let d = *dim.get_or_insert(row.len());
            if d == 0 || row.len() != d {
                return Err(VectorError::DimensionMismatch(line_no));
            }
            space
                .get_or_insert_with(|| EmbeddingSpace::new(d, label))
                .insert(token, &row);
        }
        space.ok_or(VectorError::EmptyFile)
    }

    pub fn load(path: impl AsRef<Path>, format: Format, label: &str) -> Result<Self, VectorError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| VectorError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::parse(&text, format, label)
    }

    /// Re-keys the index on canonical spellings under `alphabet`, so lookups
    /// ignore the difference between final and non-final letter forms.
    pub fn with_alphabet(mut self, alphabet: Alphabet) -> Self {
        self.index.clear();
        let mut data = Vec::with_capacity(self.data.len());
        let mut tokens = Vec::with_capacity(self.tokens.len());
        for (i, t) in self.tokens.iter().enumerate() {
            let key = alphabet.normalize(t);
            let v = &self.data[i * self.dim..(i + 1) * self.dim];
            match self.index.get(&key) {
                Some(&j) => {
                    self.duplicates += 1;
                    tokens[j] = t.clone();
                    data[j * self.dim..(j + 1) * self.dim].copy_from_slice(v);
                }
                None => {
                    self.index.insert(key, tokens.len());
                    tokens.push(t.clone());
                    data.extend_from_slice(v);
                }
            }
        }
        self.tokens = tokens;
        self.data = data;
        self.normalizer = Some(alphabet);
        self
    }

    /// The index key of `token`: its canonical spelling when an alphabet is set.
    pub fn key(&self, token: &str) -> String {
        match &self.normalizer {
            Some(a) => a.normalize(token),
            None => token.to_string(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn lookup(&self, token: &str) -> Option<&[f64]> {
        self.index
            .get(&self.key(token))
            .map(|&i| &self.data[i * self.dim..(i + 1) * self.dim])
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(&self.key(token))
    }

    /// word2vec text, 6 significant digits per component.
    pub fn to_word2vec_text(&self) -> String {
        let mut out = format!("{} {}\n", self.len(), self.dim);
        for (i, t) in self.tokens.iter().enumerate() {
            out.push_str(t);
            for x in &self.data[i * self.dim..(i + 1) * self.dim] {
                out.push(' ');
                write_g6(&mut out, *x);
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), VectorError> {
        let path = path.as_ref();
        fs::write(path, self.to_word2vec_text()).map_err(|e| VectorError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }
}

/// `%g` with 6 significant digits.
fn write_g6(out: &mut String, x: f64) {
    if x == 0.0 {
        out.push('0');
        return;
    }
    let sci = format!("{x:.5e}");
    let (mant, e) = sci.split_once('e').expect("exponent");
    let exp: i32 = e.parse().expect("exponent digits");
    let s = if !(-4..6).contains(&exp) {
        format!(
            "{}e{}{:02}",
            trim_zeros(mant),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (5 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    };
    let _ = write!(out, "{s}");
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DropReason {
    MissingNoun,
    MissingDenominal,
    MissingRootVerb,
    NoRootVerbsLeft,
}

impl DropReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DropReason::MissingNoun => "missing_noun",
            DropReason::MissingDenominal => "missing_denominal",
            DropReason::MissingRootVerb => "missing_root_verb",
            DropReason::NoRootVerbsLeft => "no_root_verbs_left",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DropRecord {
    pub point_id: usize,
    pub form: String,
    pub reason: DropReason,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    /// Surviving points with their index in the input, root verbs pruned to
    /// those present in the space.
    pub kept: Vec<(usize, DataPoint)>,
    pub drops: Vec<DropRecord>,
}

impl CoverageReport {
    pub fn n_dropped_points(&self) -> usize {
        self.drops
            .iter()
            .filter(|d| d.reason != DropReason::MissingRootVerb)
            .count()
    }

    /// `point_id,form,reason` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("point_id,form,reason\n");
        for d in &self.drops {
            let _ = writeln!(out, "{},{},{}", d.point_id, d.form, d.reason.as_str());
        }
        out
    }
}

/// Resolves every point's forms in `space`. A point is dropped when its noun
/// lookup form or its denominal is missing, or when none of its root verbs
/// is present; missing root verbs are dropped one by one.
pub fn coverage_report(points: &[DataPoint], space: &EmbeddingSpace) -> CoverageReport {
    let mut kept = Vec::new();
    let mut drops = Vec::new();
    for (id, p) in points.iter().enumerate() {
        let drop = |form: &str, reason| DropRecord {
            point_id: id,
            form: form.to_string(),
            reason,
        };
        if !space.contains(&p.noun_lookup_form) {
            drops.push(drop(&p.noun_lookup_form, DropReason::MissingNoun));
            continue;
        }
        if !space.contains(&p.denominal) {
            drops.push(drop(&p.denominal, DropReason::MissingDenominal));
            continue;
        }
        let mut q = p.clone();
        q.root_verbs.retain(|v| {
            let ok = space.contains(v);
            if !ok {
                drops.push(drop(v, DropReason::MissingRootVerb));
            }
            ok
        });
        if q.root_verbs.is_empty() {
            drops.push(drop(&p.noun, DropReason::NoRootVerbsLeft));
            continue;
        }
        kept.push((id, q));
    }
    CoverageReport { kept, drops }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_glove() {
        let s = EmbeddingSpace::parse(
            "3 4\na 1 2 3 4\nb 0 0 0 1\nc 1 1 1 1\n",
            Format::Auto,
            "w2v",
        )
        .unwrap();
        assert_eq!((s.dim(), s.len()), (4, 3));
        let g = EmbeddingSpace::parse("a 1 2 3 4\nb 0 0 0 1\n", Format::Auto, "glove").unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.lookup("a"), Some(&[1.0, 2.0, 3.0, 4.0][..]));
        assert_eq!(g.lookup("z"), None);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            EmbeddingSpace::parse("a 1 2 3 4\nb 1 2 3\n", Format::Auto, ""),
            Err(VectorError::DimensionMismatch(2))
        ));
        assert!(matches!(
            EmbeddingSpace::parse("2 2\na 1 x\n", Format::Auto, ""),
            Err(VectorError::NonNumericComponent(2))
        ));
        assert!(matches!(
            EmbeddingSpace::parse("a 1 NaN\n", Format::Auto, ""),
            Err(VectorError::NonNumericComponent(1))
        ));
        assert!(matches!(
            EmbeddingSpace::parse("\n\n", Format::Auto, ""),
            Err(VectorError::EmptyFile)
        ));
        assert!(matches!(
            EmbeddingSpace::parse("0 3\n", Format::Auto, ""),
            Err(VectorError::EmptyFile)
        ));
    }

    #[test]
    fn duplicates_last_wins() {
        let s = EmbeddingSpace::parse("a 1 2\na 3 4\n", Format::GloveText, "").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.duplicates, 1);
        assert_eq!(s.lookup("a"), Some(&[3.0, 4.0][..]));
    }

    #[test]
    fn final_letter_lookup() {
        let s = EmbeddingSpace::parse("מחשב 1 0\nלחשוך 0 1\n", Format::Auto, "")
            .unwrap()
            .with_alphabet(Alphabet::hebrew());
        assert_eq!(s.lookup("לחשוכ"), Some(&[0.0, 1.0][..]));
        assert!(s.contains("מחשב"));
    }

    #[test]
    fn g6_format() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-0.5, "-0.5"),
            (0.1234567, "0.123457"),
            (123456.7, "123457"),
            (1234567.0, "1.23457e+06"),
            (0.0000123456, "1.23456e-05"),
            (0.000123456, "0.000123456"),
            (999999.6, "1e+06"),
        ];
        for (x, want) in cases {
            let mut s = String::new();
            write_g6(&mut s, x);
            assert_eq!(s, want, "{x}");
        }
    }
}
