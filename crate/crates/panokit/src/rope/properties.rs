//! Self-checks for the circular column index.
//!
//! `check_properties` evaluates the structural guarantees of
//! [`circular_column_index`](crate::rope::circular_column_index) on a
//! concrete width and reports each one with a pass flag and a detail line,
//! so a failure is visible instead of thrown.

use crate::error::{Error, Result};
use crate::rope::circular_column_index;

/// One verified property.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PropertyCheck {
    pub property: String,
    #[serde(rename = "W")]
    pub width: u32,
    pub pass: bool,
    pub details: String,
}

/// All checks for one width.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Verify periodicity, boundary consistency, symmetry, and the peak
/// location of the circular column index for one width.
pub fn check_properties(width: u32) -> Result<PropertyReport> {
    if width < 2 {
        return Err(Error::InvalidInput(format!(
            "property checks need a width of at least 2, got {width}"
        )));
    }
    let f = |w: i64| circular_column_index(w, width).expect("width checked above");
    let w = width as i64;
    let mut checks = Vec::with_capacity(4);

    let mut violations = 0usize;
    for col in 1..=w {
        let base = f(col);
        for k in [-2i64, -1, 1, 2] {
            if f(col + k * w) != base {
                violations += 1;
            }
        }
    }
    checks.push(PropertyCheck {
        property: "periodicity".into(),
        width,
        pass: violations == 0,
        details: if violations == 0 {
            "f(w + kW) = f(w) for every column and k in -2..=2".into()
        } else {
            format!("{violations} periodic extensions disagree")
        },
    });

    let pass = f(2) == f(w);
    checks.push(PropertyCheck {
        property: "boundary_consistency".into(),
        width,
        pass,
        details: format!(
            "f(2) = {}, f(W) = {}: the columns flanking the seam share an index",
            f(2),
            f(w)
        ),
    });

    let mirror_violations = (2..=w).filter(|&col| f(col) != f(w + 2 - col)).count();
    checks.push(PropertyCheck {
        property: "symmetry".into(),
        width,
        pass: mirror_violations == 0,
        details: if mirror_violations == 0 {
            "f(w) = f(W + 2 - w) across the whole range 2..=W".into()
        } else {
            format!("{mirror_violations} columns break the mirror identity")
        },
    });

    let peak_value = (1..=w).map(f).max().unwrap();
    let peak_columns: Vec<i64> = (1..=w).filter(|&col| f(col) == peak_value).collect();
    let expected_value = width / 2 + 1;
    let expected_columns: Vec<i64> = if width % 2 == 0 {
        vec![w / 2 + 1]
    } else {
        vec![w / 2 + 1, w / 2 + 2]
    };
    let pass = peak_value == expected_value && peak_columns == expected_columns;
    checks.push(PropertyCheck {
        property: "center_maximum".into(),
        width,
        pass,
        details: format!(
            "peak {peak_value} at columns {peak_columns:?}; expected floor(W/2) + 1 = \
             {expected_value} (note: one more than the W/2 sometimes quoted informally)"
        ),
    });

    Ok(PropertyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_properties_hold_for_small_widths() {
        for width in 2..=64 {
            let report = check_properties(width).unwrap();
            assert_eq!(report.checks.len(), 4);
            assert!(report.all_pass(), "width {width}: {:?}", report.checks);
            assert!(report.checks.iter().all(|c| c.width == width));
        }
    }

    #[test]
    fn peak_details_name_the_attained_columns() {
        let report = check_properties(8).unwrap();
        let peak = report
            .checks
            .iter()
            .find(|c| c.property == "center_maximum")
            .unwrap();
        assert!(peak.details.contains("peak 5"));
        assert!(peak.details.contains("[5]"));

        let report = check_properties(5).unwrap();
        let peak = report
            .checks
            .iter()
            .find(|c| c.property == "center_maximum")
            .unwrap();
        assert!(peak.details.contains("[3, 4]"));
    }

    #[test]
    fn widths_below_two_are_rejected() {
        assert!(check_properties(0).is_err());
        assert!(check_properties(1).is_err());
    }

    #[test]
    fn report_serializes_as_a_list_with_a_capital_w_key() {
        let report = check_properties(4).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        let list = json.as_array().unwrap();
        assert_eq!(list.len(), 4);
        assert_eq!(list[0]["W"], 4);
        assert!(list[0]["property"].is_string());
        assert!(list[0]["pass"].is_boolean());
        assert!(list[0]["details"].is_string());
    }
}
