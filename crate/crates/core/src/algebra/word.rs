use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        Word(self.0.iter().chain(&o.0).copied().collect())
    }

    /// Base-`n` code, first letter most significant.
    pub fn encode(&self, n: usize) -> u64 {
        self.0.iter().fold(0u64, |acc, &x| acc * n as u64 + x as u64)
    }

    pub fn decode(mut code: u64, n: usize, len: usize) -> Word {
        let mut v = vec![0usize; len];
        for i in (0..len).rev() {
            v[i] = (code % n as u64) as usize;
            code /= n as u64;
        }
        Word(v)
    }

    /// Apply the braiding move `(x, y) -> (x ▷ y, x)` at position `i`.
    pub fn braid_at(&self, i: usize, op: impl Fn(usize, usize) -> usize) -> Word {
        let mut v = self.0.clone();
        let (x, y) = (v[i], v[i + 1]);
        v[i] = op(x, y);
        v[i + 1] = x;
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        if s.trim().is_empty() {
            return Ok(Word::default());
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad letter {t:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
