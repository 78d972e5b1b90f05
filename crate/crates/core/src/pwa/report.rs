use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use super::{check_property, PiecewiseFn, Property, Verdict};
use crate::interval::IntervalSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub trivial: bool,
    pub proper: bool,
    pub finite_valued: bool,
    pub dom: IntervalSet,
    pub dom_minus: IntervalSet,
}

impl Classification {
    pub fn of(f: &PiecewiseFn) -> Self {
        Classification {
            trivial: f.is_trivial(),
            proper: f.is_proper(),
            finite_valued: f.is_finite_valued(),
            dom: f.dom(),
            dom_minus: f.dom_minus(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub classification: Classification,
    pub verdicts: BTreeMap<Property, Verdict>,
}

pub fn classify_report(f: &PiecewiseFn) -> PropertyReport {
    let verdicts = Property::ALL
        .iter()
        .map(|&p| (p, check_property(f, p)))
        .collect();
    PropertyReport {
        classification: Classification::of(f),
        verdicts,
    }
}

impl PropertyReport {
    pub fn verdict(&self, p: Property) -> &Verdict {
        &self.verdicts[&p]
    }

    /// Implications between verdicts that must never be broken.
    pub fn lattice_violations(&self) -> Vec<String> {
        use Property::*;
        let h = |p| self.verdict(p).holds();
        let rules: [(&str, bool); 9] = [
            ("linear => affine", !h(Linear) || h(Affine)),
            ("affine => convex", !h(Affine) || h(Convex)),
            ("affine => concave", !h(Affine) || h(Concave)),
            ("sublinear => convex", !h(Sublinear) || h(Convex)),
            (
                "sublinear => pos-homogeneous",
                !h(Sublinear) || h(PosHomogeneous),
            ),
            ("continuous => lsc", !h(ContinuousOnDom) || h(LscOnDom)),
            ("continuous => usc", !h(ContinuousOnDom) || h(UscOnDom)),
            ("homogeneous => odd", !h(Homogeneous) || h(Odd)),
            (
                "epi-closed <=> all-sublevels-closed",
                h(EpiClosed) == h(AllSublevelsClosed),
            ),
        ];
        let mut out: Vec<String> = rules
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.to_string())
            .collect();
        if h(ContinuousOnDom) != (h(LscOnDom) && h(UscOnDom)) {
            out.push("continuous <=> lsc and usc".into());
        }
        if h(Affine) != (h(Convex) && h(Concave)) {
            out.push("affine <=> convex and concave".into());
        }
        out
    }

    pub fn to_json(&self, name: &str) -> Value {
        let c = &self.classification;
        let mut props = Map::new();
        for (p, v) in &self.verdicts {
            let mut entry = Map::new();
            entry.insert("verdict".into(), json!(v.label()));
            if let Some(w) = v.witness() {
                entry.insert("witness".into(), w.to_json());
            }
            props.insert(p.name().into(), Value::Object(entry));
        }
        json!({
            "name": name,
            "classification": {
                "trivial": c.trivial,
                "proper": c.proper,
                "finite_valued": c.finite_valued,
                "dom": c.dom.to_string(),
                "dom_minus": c.dom_minus.to_string(),
            },
            "properties": props,
        })
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.classification;
        writeln!(f, "trivial        {}", c.trivial)?;
        writeln!(f, "proper         {}", c.proper)?;
        writeln!(f, "finite-valued  {}", c.finite_valued)?;
        writeln!(f, "dom            {}", c.dom)?;
        writeln!(f, "dom_-          {}", c.dom_minus)?;
        writeln!(f)?;
        for (p, v) in &self.verdicts {
            match v.witness() {
                Some(w) => writeln!(f, "{:<22} {:<8} {}", p.name(), v.label(), w)?,
                None => writeln!(f, "{:<22} {}", p.name(), v.label())?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;

    #[test]
    fn indicator_report() {
        let f = PiecewiseFn::indicator(&IntervalSet::closed(qi(0), qi(1)));
        let r = classify_report(&f);
        assert!(r.classification.proper);
        assert!(r.verdict(Property::Convex).holds());
        assert!(r.verdict(Property::ContinuousOnDom).holds());
        assert!(r.verdict(Property::Linear).fails());
        assert!(r.lattice_violations().is_empty());
        let j = r.to_json("iota");
        assert_eq!(j["properties"].as_object().unwrap().len(), 18);
        assert_eq!(j["classification"]["dom"], "[0, 1]");
    }

    #[test]
    fn trivial_report() {
        let r = classify_report(&PiecewiseFn::nu());
        assert!(r.classification.trivial);
        assert!(!r.classification.proper);
        assert!(r.verdict(Property::PosHomogeneous).fails());
        assert!(r.verdict(Property::Sublinear).fails());
    }
}
