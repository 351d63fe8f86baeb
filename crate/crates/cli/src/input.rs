//! Request decoding: JSON with positions on syntax errors, schema version,
//! unknown-field rejection, and the ring, chain and element readers shared by
//! every command.

use krull_core::chain::{elems_from_json, prime_from_json, IdealisticChain, IdealisticPrime};
use krull_core::extensions::{extension_from_json, s_elem_from_json};
use krull_core::lattice::{Lattice, Presentation};
use krull_core::{Elem, Error, Ring, RingDescriptor};
use serde_json::{Map, Value};

use crate::Failure;

pub const SCHEMA_VERSION: u64 = 1;

/// Parses request text; syntax errors carry line and column.
pub fn parse_json(text: &str, source: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::input("Json", format!("{source}: {e}")))
}

/// A request object whose fields have been checked against the command's
/// schema. `"v"` is always accepted and must equal the schema version.
pub struct Req {
    obj: Map<String, Value>,
}

impl Req {
    pub fn new(v: Value, allowed: &[&str]) -> Result<Req, Failure> {
        let Value::Object(obj) = v else {
            return Err(Failure::input("Invalid", "request must be a JSON object".into()));
        };
        if let Some(k) = obj.keys().find(|k| k.as_str() != "v" && !allowed.contains(&k.as_str())) {
            return Err(Failure::input("Invalid", format!("unknown field {k:?}; expected one of {allowed:?}")));
        }
        if let Some(ver) = obj.get("v") {
            if ver.as_u64() != Some(SCHEMA_VERSION) {
                return Err(Failure::input("Invalid", format!("unsupported schema version {ver}; expected {SCHEMA_VERSION}")));
            }
        }
        Ok(Req { obj })
    }

    pub fn get(&self, k: &str) -> Option<&Value> {
        self.obj.get(k)
    }

    pub fn need(&self, k: &str) -> Result<&Value, Failure> {
        self.obj.get(k).ok_or_else(|| Failure::input("Invalid", format!("missing field {k:?}")))
    }

    pub fn has(&self, k: &str) -> bool {
        self.obj.contains_key(k)
    }

    pub fn usize(&self, k: &str) -> Result<usize, Failure> {
        self.need(k)?.as_u64().map(|x| x as usize).ok_or_else(|| Failure::input("Invalid", format!("{k:?} must be a natural")))
    }

    pub fn opt_usize(&self, k: &str) -> Result<Option<usize>, Failure> {
        if self.has(k) {
            self.usize(k).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn string(&self, k: &str) -> Result<&str, Failure> {
        self.need(k)?.as_str().ok_or_else(|| Failure::input("Invalid", format!("{k:?} must be a string")))
    }

    pub fn bool_or(&self, k: &str, default: bool) -> Result<bool, Failure> {
        match self.get(k) {
            None => Ok(default),
            Some(v) => v.as_bool().ok_or_else(|| Failure::input("Invalid", format!("{k:?} must be a boolean"))),
        }
    }
}

/// A base ring descriptor, or an extension `{"base":…,"monic":…}`.
pub fn ring(v: &Value) -> Result<Ring, Failure> {
    if v.get("base").is_some() {
        Ok(extension_from_json(v)?)
    } else {
        Ok(Ring::make(&RingDescriptor::from_json(v)?)?)
    }
}

pub fn extension(v: &Value) -> Result<Ring, Failure> {
    Ok(extension_from_json(v)?)
}

pub fn elem(r: &Ring, v: &Value, what: &str) -> Result<Elem, Failure> {
    match v {
        Value::String(s) => Ok(r.parse(s)?),
        Value::Number(n) => Ok(r.parse(&n.to_string())?),
        Value::Array(_) if r.ext_parts().is_some() => Ok(s_elem_from_json(r, v)?),
        _ => Err(Failure::input("Invalid", format!("{what} must be an element string"))),
    }
}

pub fn elems(r: &Ring, v: &Value, what: &str) -> Result<Vec<Elem>, Failure> {
    if r.ext_parts().is_some() {
        let arr = v.as_array().ok_or_else(|| Failure::input("Invalid", format!("{what} must be a list")))?;
        return arr.iter().map(|x| elem(r, x, what)).collect();
    }
    Ok(elems_from_json(r, Some(v), what)?)
}

pub fn prime(r: &Ring, v: &Value) -> Result<IdealisticPrime, Failure> {
    if r.ext_parts().is_none() {
        return Ok(prime_from_json(r, v)?);
    }
    let obj = v.as_object().ok_or_else(|| Failure::input("Invalid", "idealistic prime must be an object".into()))?;
    if let Some(k) = obj.keys().find(|k| *k != "J" && *k != "U") {
        return Err(Failure::input("Invalid", format!("unknown field {k:?}")));
    }
    let side = |k: &str| obj.get(k).map(|x| elems(r, x, k)).transpose().map(Option::unwrap_or_default);
    Ok(IdealisticPrime::new(side("J")?, side("U")?))
}

pub fn primes(r: &Ring, v: &Value) -> Result<Vec<IdealisticPrime>, Failure> {
    let arr = v.as_array().ok_or_else(|| Failure::input("Invalid", "a chain is a list of {\"J\",\"U\"} objects".into()))?;
    arr.iter().map(|p| prime(r, p)).collect()
}

pub fn chain(r: &Ring, v: &Value) -> Result<IdealisticChain, Failure> {
    Ok(IdealisticChain::new(primes(r, v)?)?)
}

pub fn sequences(r: &Ring, v: &Value) -> Result<Vec<Vec<Elem>>, Failure> {
    let arr = v.as_array().ok_or_else(|| Failure::input("Invalid", "\"testset\" must be a list of sequences".into()))?;
    arr.iter().map(|s| elems(r, s, "sequence")).collect()
}

pub fn lattice(v: &Value, cap: usize) -> Result<Lattice, Failure> {
    Ok(Lattice::with_cap(Presentation::from_json(v)?, cap)?)
}

pub fn lattice_elems(t: &Lattice, v: &Value, what: &str) -> Result<Vec<krull_core::lattice::Element>, Failure> {
    let arr = v.as_array().ok_or_else(|| Failure::input("Invalid", format!("{what} must be a list of elements")))?;
    arr.iter().map(|x| Ok(t.element_from_json(x)?)).collect()
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::core(e)
    }
}
