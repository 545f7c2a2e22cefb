//! Parameter lists on the command line: `3`, `1..8` (inclusive) or `1,2,5`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ParamRange(Vec<u64>);

impl ParamRange {
    pub fn values(&self) -> &[u64] {
        &self.0
    }
}

impl FromStr for ParamRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let values: Vec<u64> = if let Some((lo, hi)) = s.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
            let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range end in {s:?}"))?;
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            (lo..=hi).collect()
        } else {
            s.split(',').map(|t| t.trim().parse().map_err(|_| format!("bad value {t:?} in {s:?}"))).collect::<Result<_, _>>()?
        };
        if values.is_empty() {
            return Err("empty parameter list".into());
        }
        Ok(Self(values))
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.0;
        let contiguous = v.windows(2).all(|w| w[1] == w[0] + 1);
        if v.len() > 1 && contiguous {
            write!(f, "{}..{}", v[0], v[v.len() - 1])
        } else {
            let parts: Vec<String> = v.iter().map(u64::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl From<ParamRange> for String {
    fn from(r: ParamRange) -> Self {
        r.to_string()
    }
}

impl TryFrom<String> for ParamRange {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!("1..4".parse::<ParamRange>().unwrap().values(), &[1, 2, 3, 4]);
        assert_eq!("2..=3".parse::<ParamRange>().unwrap().values(), &[2, 3]);
        assert_eq!("5".parse::<ParamRange>().unwrap().values(), &[5]);
        assert_eq!("1, 3,8".parse::<ParamRange>().unwrap().values(), &[1, 3, 8]);
        assert!("4..2".parse::<ParamRange>().is_err());
        assert!("a".parse::<ParamRange>().is_err());
        assert_eq!("1..8".parse::<ParamRange>().unwrap().to_string(), "1..8");
        assert_eq!("1,3".parse::<ParamRange>().unwrap().to_string(), "1,3");
    }
}
