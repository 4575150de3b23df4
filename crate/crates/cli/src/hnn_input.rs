//! Reading HNN extensions over a finite permutation group from the command line.

use std::collections::BTreeMap;

use raagkit::error::{Error, Result};
use raagkit::hnn::{britton_reduce, HnnElement, HnnGroup, Piece};
use raagkit::quotient::{FiniteGroup, Perm};
use serde_json::Value;

/// The group together with the names used for the base generators.
pub struct HnnInput {
    pub group: HnnGroup,
    names: BTreeMap<String, usize>,
}

impl HnnInput {
    /// Reads `{"degree": n, "generators": {name: [images]}, "assoc": [words]}`.
    /// The name `s` is reserved for the stable letter.
    pub fn from_json(v: &Value, cap: usize) -> Result<HnnInput> {
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Invalid("base needs an integer \"degree\"".into()))? as usize;
        let gens = v
            .get("generators")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Invalid("base needs a \"generators\" object".into()))?;
        let mut perms = Vec::new();
        let mut order = Vec::new();
        for (name, img) in gens {
            if name == "s" {
                return Err(Error::Invalid("\"s\" is the stable letter and cannot name a generator".into()));
            }
            let images: Vec<u32> = serde_json::from_value(img.clone())
                .map_err(|_| Error::Invalid(format!("generator {name} must be an array of integers")))?;
            let p = Perm::from_images(images)?;
            if p.degree() != degree {
                return Err(Error::Invalid(format!("generator {name} has degree {}, expected {degree}", p.degree())));
            }
            order.push(name.clone());
            perms.push(p);
        }
        let q = FiniteGroup::generate(degree, perms.clone(), cap)?;
        let names = order
            .into_iter()
            .zip(&perms)
            .map(|(n, p)| (n, q.index_of(p).expect("generators lie in the group")))
            .collect();
        let mut input = HnnInput { group: HnnGroup::new(q.clone(), &[]), names };
        let mut assoc = Vec::new();
        for w in v.get("assoc").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            let w = w.as_str().ok_or_else(|| Error::Invalid("\"assoc\" lists words in the generators".into()))?;
            let x = input.parse(w)?;
            if !x.is_base() {
                return Err(Error::Invalid("associated subgroup generators cannot involve s".into()));
            }
            assoc.push(x.head);
        }
        input.group = HnnGroup::new(q, &assoc);
        Ok(input)
    }

    /// Parses tokens `name`, `name^k`, `s`, `s^k`; `1` or the empty string is the identity.
    pub fn parse(&self, text: &str) -> Result<HnnElement<usize>> {
        let q = self.group.base();
        let mut raw = Vec::new();
        for (position, token) in text.split_whitespace().enumerate() {
            if token == "1" {
                continue;
            }
            let bad = || Error::BadToken { token: token.to_string(), position };
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| bad())?),
                None => (token, 1),
            };
            if name == "s" {
                raw.push(Piece::Stable(exp));
                continue;
            }
            let &x = self.names.get(name).ok_or_else(bad)?;
            let x = if exp < 0 { q.inv(x) } else { x };
            let mut acc = q.identity();
            for _ in 0..exp.unsigned_abs() {
                acc = q.mul(acc, x);
            }
            raw.push(Piece::Base(acc));
        }
        Ok(britton_reduce(&self.group, &raw))
    }
}
