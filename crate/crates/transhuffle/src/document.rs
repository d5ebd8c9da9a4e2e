//! JSON interchange format for shuffles.
//!
//! Exact probabilities serialize as decimal integer strings for numerator
//! and denominator, so arbitrary precision survives every JSON parser; real
//! probabilities serialize as decimal strings with 17 significant digits,
//! which round-trip `f64` bit-exactly.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prob::{Mode, Prob};
use crate::shuffle::{LazyTransposition, Shuffle};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DocumentProb {
    Exact { num: String, den: String },
    Real(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocumentStep {
    pub a: usize,
    pub b: usize,
    pub p: DocumentProb,
}

/// Optional record of how a shuffle was built.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShuffleDocument {
    pub format_version: String,
    pub n: usize,
    pub mode: String,
    pub steps: Vec<DocumentStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn encode_prob(p: &Prob) -> DocumentProb {
    match p {
        Prob::Exact(r) => DocumentProb::Exact {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        },
        // 16 digits after the point in scientific notation: 17 significant
        Prob::Real(x) => DocumentProb::Real(format!("{x:.16e}")),
    }
}

fn decode_prob(p: &DocumentProb, mode: Mode) -> Result<Prob> {
    match (p, mode) {
        (DocumentProb::Exact { num, den }, Mode::Exact) => {
            let num = BigInt::from_str(num)
                .map_err(|e| Error::Document(format!("bad numerator: {e}")))?;
            let den = BigInt::from_str(den)
                .map_err(|e| Error::Document(format!("bad denominator: {e}")))?;
            if den == BigInt::from(0) {
                return Err(Error::Document("zero denominator".into()));
            }
            Prob::from_rational(BigRational::new(num, den))
        }
        (DocumentProb::Real(s), Mode::Real) => {
            let x: f64 = s
                .parse()
                .map_err(|e| Error::Document(format!("bad real probability: {e}")))?;
            Prob::real(x)
        }
        _ => Err(Error::Document(
            "probability encoding does not match the document mode".into(),
        )),
    }
}

impl ShuffleDocument {
    pub fn from_shuffle(shuffle: &Shuffle, provenance: Option<Provenance>) -> Self {
        let steps = shuffle
            .steps()
            .iter()
            .map(|s| DocumentStep {
                a: s.a(),
                b: s.b(),
                p: encode_prob(s.p()),
            })
            .collect();
        ShuffleDocument {
            format_version: FORMAT_VERSION.to_string(),
            n: shuffle.n(),
            mode: shuffle.mode().to_string(),
            steps,
            provenance,
        }
    }

    pub fn to_shuffle(&self) -> Result<Shuffle> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported format_version {:?}",
                self.format_version
            )));
        }
        let mode = match self.mode.as_str() {
            "exact" => Mode::Exact,
            "real" => Mode::Real,
            other => {
                return Err(Error::Document(format!("unknown mode {other:?}")));
            }
        };
        let steps: Result<Vec<LazyTransposition>> = self
            .steps
            .iter()
            .map(|s| LazyTransposition::new(s.a, s.b, decode_prob(&s.p, mode)?))
            .collect();
        Shuffle::new(self.n, steps?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(format!("parse failure: {e}")))
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| Error::Document(format!("write {}: {e}", path.display())))
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Document(format!("read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simple_shuffle_from_word;
    use crate::words::bubble_sort_word;

    fn word_shuffle(n: usize) -> Shuffle {
        simple_shuffle_from_word(&bubble_sort_word(n))
    }

    #[test]
    fn exact_round_trip_is_bit_exact() {
        let shuffle = word_shuffle(4);
        let doc = ShuffleDocument::from_shuffle(&shuffle, None);
        let parsed = ShuffleDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
        let back = parsed.to_shuffle().unwrap();
        assert_eq!(back.n(), shuffle.n());
        assert_eq!(back.steps(), shuffle.steps());
    }

    #[test]
    fn real_round_trip_is_bit_exact() {
        let steps = vec![
            LazyTransposition::new(1, 2, Prob::real(0.5).unwrap()).unwrap(),
            LazyTransposition::new(2, 3, Prob::real(1.0 / 3.0).unwrap()).unwrap(),
            LazyTransposition::new(1, 3, Prob::real(0.123456789012345678).unwrap()).unwrap(),
        ];
        let shuffle = Shuffle::new(3, steps).unwrap();
        let doc = ShuffleDocument::from_shuffle(&shuffle, None);
        let back = ShuffleDocument::from_json(&doc.to_json())
            .unwrap()
            .to_shuffle()
            .unwrap();
        for (orig, parsed) in shuffle.steps().iter().zip(back.steps()) {
            assert_eq!(orig.p().to_f64().to_bits(), parsed.p().to_f64().to_bits());
        }
    }

    #[test]
    fn rational_normalization_survives() {
        let p = Prob::exact(2, 4).unwrap();
        let step = LazyTransposition::new(1, 2, p).unwrap();
        let shuffle = Shuffle::new(2, vec![step]).unwrap();
        let doc = ShuffleDocument::from_shuffle(&shuffle, None);
        match &doc.steps[0].p {
            DocumentProb::Exact { num, den } => {
                assert_eq!(num, "1");
                assert_eq!(den, "2");
            }
            _ => panic!("expected exact encoding"),
        }
    }

    #[test]
    fn provenance_round_trips() {
        let shuffle = word_shuffle(3);
        let provenance = Provenance {
            method: "word".into(),
            word: Some(vec![1, 2, 1]),
            partition: None,
            seed: None,
        };
        let doc = ShuffleDocument::from_shuffle(&shuffle, Some(provenance));
        let parsed = ShuffleDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(ShuffleDocument::from_json("{").is_err());
        let mut doc = ShuffleDocument::from_shuffle(&word_shuffle(3), None);
        doc.format_version = "2".into();
        assert!(doc.to_shuffle().is_err());
        let mut doc = ShuffleDocument::from_shuffle(&word_shuffle(3), None);
        doc.mode = "real".into();
        assert!(matches!(doc.to_shuffle(), Err(Error::Document(_))));
    }
}
