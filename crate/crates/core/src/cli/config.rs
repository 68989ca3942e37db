//! `key = value` run configuration files.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, Vec<String>>,
}

/// Keys are compared with `-` and `_` treated alike.
fn canonical(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl ConfigFile {
    /// Blank lines and lines starting with `#` are ignored. A key may repeat;
    /// single-valued settings use the last occurrence.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
            let k = canonical(k);
            if k.is_empty() {
                return Err(format!("config line {}: empty key", i + 1));
            }
            values.entry(k).or_default().push(v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values
            .get(&canonical(key))
            .and_then(|v| v.last())
            .map(String::as_str)
    }

    pub fn get_all(&self, key: &str) -> &[String] {
        self.values
            .get(&canonical(key))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_repeat() {
        let c = ConfigFile::parse(
            "# run\nmin-n = 7\nvectors = a=x.vec\n\nvectors = b = y.vec\nmin_n=8\n",
        )
        .unwrap();
        assert_eq!(c.get("min_n"), Some("8"));
        assert_eq!(c.get_all("vectors"), ["a=x.vec", "b = y.vec"]);
        assert!(ConfigFile::parse("oops\n").is_err());
    }
}
