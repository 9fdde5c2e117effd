//! JSON encoding: `{"log2pi": "1/1", "gamma": "-1/1", "zeta2": "4/3"}`.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ConstSymbol, SymError, SymVal};
use crate::exactnum::{Int, Rat};

/// Exact fraction as `"p/q"` (the denominator is always written).
pub fn fraction_string(c: &Rat) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_fraction(s: &str) -> Result<Rat, SymError> {
    let bad = || SymError::BadFraction(s.to_string());
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: Int = p.parse().map_err(|_| bad())?;
    let q: Int = q.parse().map_err(|_| bad())?;
    if q == Int::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

impl Serialize for SymVal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (sym, c) in &self.terms {
            map.serialize_entry(&sym.name(), &fraction_string(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SymVal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut out = SymVal::zero();
        for (name, frac) in raw {
            let sym = ConstSymbol::from_name(&name).map_err(D::Error::custom)?;
            let c = parse_fraction(&frac).map_err(D::Error::custom)?;
            out = out
                .try_add(&SymVal::term(sym, c))
                .map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symconst::constant_c;

    #[test]
    fn json_shape() {
        let v = &constant_c() + &SymVal::term(ConstSymbol::Zeta(2), Rat::new(4.into(), 3.into()));
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"log2pi":"1/2","gamma":"-1/2","zeta2":"4/3"}"#);
        let back: SymVal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("6/4").unwrap(), Rat::new(3.into(), 2.into()));
        assert_eq!(parse_fraction("-7").unwrap(), Rat::from_integer((-7).into()));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("0.5").is_err());
        assert_eq!(fraction_string(&Rat::from_integer(5.into())), "5/1");
    }

    #[test]
    fn rejects_unknown_and_mixed() {
        assert!(serde_json::from_str::<SymVal>(r#"{"zeta1":"1/1"}"#).is_err());
        assert!(serde_json::from_str::<SymVal>(r#"{"zeta2":"1/1","pi2":"1/1"}"#).is_err());
    }
}
