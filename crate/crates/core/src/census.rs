//! Census of cyclic extensions built from every identity-fixing
//! semi-automorphism of small bases.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::extension::{cube_root_exponent, ExtensionError, ExtensionSpec};
use crate::morphisms::{classify, enumerate_semiautomorphisms, MapKind, Mapping, SemiAutOptions};
use crate::props::{is_group, is_moufang, MoufangMode};
use crate::scan::ScanPolicy;
use crate::table::CayleyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ResultClass {
    Group,
    MoufangNonassoc,
    NonMoufang,
    Skipped,
}

impl ResultClass {
    pub fn label(self) -> &'static str {
        match self {
            ResultClass::Group => "GROUP",
            ResultClass::MoufangNonassoc => "MOUFANG_NONASSOC",
            ResultClass::NonMoufang => "NON_MOUFANG",
            ResultClass::Skipped => "SKIPPED",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub base: String,
    pub h: usize,
    /// Position of the action among all semi-automorphisms of the base,
    /// sorted by image array.
    pub action_index: usize,
    pub action: Mapping,
    pub action_class: MapKind,
    pub result: ResultClass,
    /// Base is a group and the action an automorphism.
    pub predicted_group: bool,
    #[serde(skip)]
    pub runtime_us: u128,
}

impl CensusRow {
    /// `GROUP ⇔ prediction` for loops that came out Moufang; only the forward
    /// direction is required otherwise.
    pub fn criterion_holds(&self) -> bool {
        match self.result {
            ResultClass::Group => self.predicted_group,
            ResultClass::MoufangNonassoc => !self.predicted_group,
            ResultClass::NonMoufang => !self.predicted_group,
            ResultClass::Skipped => true,
        }
    }
}

/// Identity-moving semi-automorphism left out of the census.
#[derive(Debug, Clone, Serialize)]
pub struct AnnexRow {
    pub base: String,
    pub action_index: usize,
    pub action: Mapping,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub annex: Vec<AnnexRow>,
}

/// Named bases paired with extension orders.
pub fn converse_census(
    bases: &[(String, CayleyTable)],
    orders: &[usize],
    opts: SemiAutOptions,
    policy: &ScanPolicy,
) -> Result<Census, ExtensionError> {
    for &h in orders {
        cube_root_exponent(h)?;
    }
    let groups = bases
        .iter()
        .map(|(_, t)| enumerate_semiautomorphisms(t, SemiAutOptions { identity_fixing: false, ..opts }))
        .collect::<Result<Vec<_>, _>>()?;

    let mut jobs = Vec::new();
    let mut annex = Vec::new();
    for ((name, t), g) in bases.iter().zip(&groups) {
        for (i, f) in g.maps.iter().enumerate() {
            if !f.fixes_identity() {
                annex.push(AnnexRow { base: name.clone(), action_index: i, action: f.clone() });
                continue;
            }
            for &h in orders {
                if h % f.order() == 0 {
                    jobs.push((name, t, h, i, f));
                }
            }
        }
    }
    let rows = jobs
        .into_par_iter()
        .map(|(name, t, h, i, f)| census_row(name, t, h, i, f, policy))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Census { rows, annex })
}

fn census_row(
    name: &str,
    base: &CayleyTable,
    h: usize,
    index: usize,
    f: &Mapping,
    policy: &ScanPolicy,
) -> Result<CensusRow, ExtensionError> {
    let start = Instant::now();
    let class = classify(base, f)?;
    let base_group = is_group(base, &ScanPolicy::with_cap(base.order().max(policy.cap)))?.holds;
    let predicted_group = base_group && class.is_automorphism;
    let spec = ExtensionSpec::new(base.clone(), h, f.clone())?;
    let result = match spec.materialize() {
        Ok(t) if t.order() <= policy.cap => {
            if is_group(&t, policy)?.holds {
                ResultClass::Group
            } else if is_moufang(&t, MoufangMode::Single, policy)?.holds {
                ResultClass::MoufangNonassoc
            } else {
                ResultClass::NonMoufang
            }
        }
        Ok(_) | Err(ExtensionError::CapExceeded { .. }) => ResultClass::Skipped,
        Err(e) => return Err(e),
    };
    Ok(CensusRow {
        base: name.to_string(),
        h,
        action_index: index,
        action: f.clone(),
        action_class: class.kind(),
        result,
        predicted_group,
        runtime_us: start.elapsed().as_micros(),
    })
}

impl Census {
    /// Tab-separated rendering; runtimes are only printed on request so that
    /// default output is reproducible byte for byte.
    pub fn to_tsv(&self, timings: bool) -> String {
        let mut out = String::from("base\th\taction_index\taction_class\tresult_class\truntime\n");
        for r in &self.rows {
            let runtime = if timings { format!("{}us", r.runtime_us) } else { "-".into() };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.base,
                r.h,
                r.action_index,
                r.action_class.label(),
                r.result.label(),
                runtime
            ));
        }
        if !self.annex.is_empty() {
            out.push_str("# annex: identity-moving semi-automorphisms (excluded)\n");
            for a in &self.annex {
                out.push_str(&format!("# {}\t{}\tMOVES_IDENTITY\t{}\n", a.base, a.action_index, a.action));
            }
        }
        out
    }

    pub fn to_json(&self, timings: bool) -> String {
        let mut v = serde_json::to_value(self).expect("census serializes");
        if timings {
            for (row, r) in v["rows"].as_array_mut().expect("rows array").iter_mut().zip(&self.rows) {
                row["runtime_us"] = serde_json::json!(r.runtime_us as u64);
            }
        }
        let mut s = serde_json::to_string_pretty(&v).expect("json");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric};
    use crate::morphisms::inversion;

    #[test]
    fn s3_census_contains_chein_row() {
        let census = converse_census(
            &[("s3".into(), symmetric(3).unwrap())],
            &[2],
            SemiAutOptions::default(),
            &ScanPolicy::default(),
        )
        .unwrap();
        let inv = inversion(&symmetric(3).unwrap());
        let row = census.rows.iter().find(|r| r.action == inv).unwrap();
        assert_eq!(row.result, ResultClass::MoufangNonassoc);
        assert_eq!(row.action_class, MapKind::Anti);
        for r in census.rows.iter().filter(|r| r.action_class == MapKind::Auto) {
            assert_eq!(r.result, ResultClass::Group);
        }
        assert!(census.rows.iter().all(|r| r.criterion_holds()));
    }

    #[test]
    fn z2_swap_goes_to_annex() {
        let census = converse_census(
            &[("z2".into(), cyclic(2).unwrap())],
            &[2],
            SemiAutOptions::default(),
            &ScanPolicy::default(),
        )
        .unwrap();
        assert_eq!(census.annex.len(), 1);
        assert_eq!(census.rows.len(), 1);
    }

    #[test]
    fn orders_divisible_by_three_rejected() {
        let err = converse_census(
            &[("z2".into(), cyclic(2).unwrap())],
            &[3],
            SemiAutOptions::default(),
            &ScanPolicy::default(),
        )
        .unwrap_err();
        assert_eq!(err, ExtensionError::CoprimalityViolation(3));
    }
}
