//! The seven published timing tables, transcribed verbatim.
//!
//! Values are copied exactly as printed, including cells whose printed mean
//! disagrees with its own trial row. [`fixture_consistency_report`] lists
//! those disagreements.

use thiserror::Error;

use crate::format::format_sig;
use crate::stats;

const TABLES: [&str; 7] = [
    include_str!("../../fixtures/table1.csv"),
    include_str!("../../fixtures/table2.csv"),
    include_str!("../../fixtures/table3.csv"),
    include_str!("../../fixtures/table4.csv"),
    include_str!("../../fixtures/table5.csv"),
    include_str!("../../fixtures/table6.csv"),
    include_str!("../../fixtures/table7.csv"),
];

/// Recomputed and printed means further apart than this are flagged.
pub const CONSISTENCY_FLAG: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixtureError {
    #[error("no published table {0} (expected 1..=7)")]
    UnknownTable(usize),
    #[error("fixture CSV: {0}")]
    Csv(String),
}

/// One published table: grid values, per-trial seconds and printed means.
#[derive(Debug, Clone, PartialEq)]
pub struct PaperFixture {
    pub table_id: usize,
    pub grid: Vec<f64>,
    /// `trials[row][trial]`, seconds as printed.
    pub trials: Vec<Vec<f64>>,
    pub printed_means: Vec<f64>,
}

impl PaperFixture {
    pub fn trials_per_row(&self) -> usize {
        self.trials.first().map_or(0, Vec::len)
    }

    /// Parses the shipped layout `param,t1,...,tN,printed_mean`.
    pub fn from_csv(table_id: usize, text: &str) -> Result<PaperFixture, FixtureError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| FixtureError::Csv(e.to_string()))?.clone();
        let width = headers.len();
        if width < 3 || &headers[0] != "param" || &headers[width - 1] != "printed_mean" {
            return Err(FixtureError::Csv(format!(
                "unexpected header `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut fixture = PaperFixture {
            table_id,
            grid: vec![],
            trials: vec![],
            printed_means: vec![],
        };
        for record in reader.records() {
            let record = record.map_err(|e| FixtureError::Csv(e.to_string()))?;
            let values = record
                .iter()
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .map_err(|_| FixtureError::Csv(format!("bad number `{f}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            fixture.grid.push(values[0]);
            fixture.trials.push(values[1..width - 1].to_vec());
            fixture.printed_means.push(values[width - 1]);
        }
        Ok(fixture)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("param");
        for t in 1..=self.trials_per_row() {
            out.push_str(&format!(",t{t}"));
        }
        out.push_str(",printed_mean\n");
        for ((g, row), m) in self.grid.iter().zip(&self.trials).zip(&self.printed_means) {
            out.push_str(&format_sig(*g, 12));
            for v in row {
                out.push(',');
                out.push_str(&format_sig(*v, 12));
            }
            out.push(',');
            out.push_str(&format_sig(*m, 12));
            out.push('\n');
        }
        out
    }

    /// Row means recomputed from the printed trial values.
    pub fn recomputed_means(&self) -> Vec<f64> {
        self.trials.iter().map(|row| stats::mean(row)).collect()
    }
}

/// Published table `table_id` (1..=7).
pub fn paper_fixture(table_id: usize) -> Result<PaperFixture, FixtureError> {
    let text = table_id
        .checked_sub(1)
        .and_then(|i| TABLES.get(i))
        .ok_or(FixtureError::UnknownTable(table_id))?;
    PaperFixture::from_csv(table_id, text)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyRow {
    pub grid_value: f64,
    pub recomputed_mean: f64,
    pub printed_mean: f64,
    pub delta: f64,
    pub flagged: bool,
}

/// Compares each printed mean with the mean of its printed trials.
pub fn fixture_consistency_report(fixture: &PaperFixture) -> Vec<ConsistencyRow> {
    fixture
        .grid
        .iter()
        .zip(fixture.recomputed_means())
        .zip(&fixture.printed_means)
        .map(|((&grid_value, recomputed_mean), &printed_mean)| {
            let delta = recomputed_mean - printed_mean;
            ConsistencyRow {
                grid_value,
                recomputed_mean,
                printed_mean,
                delta,
                flagged: delta.abs() > CONSISTENCY_FLAG,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let expected = [(10, 10), (10, 10), (9, 6), (10, 6), (10, 6), (10, 6), (10, 6)];
        for (id, (rows, trials)) in (1..=7).zip(expected) {
            let f = paper_fixture(id).unwrap();
            assert_eq!(f.grid.len(), rows, "table {id}");
            assert_eq!(f.trials_per_row(), trials, "table {id}");
            assert!(f.trials.iter().all(|r| r.len() == trials));
        }
        assert_eq!(paper_fixture(0), Err(FixtureError::UnknownTable(0)));
        assert_eq!(paper_fixture(8), Err(FixtureError::UnknownTable(8)));
    }

    #[test]
    fn printed_values() {
        let t1 = paper_fixture(1).unwrap();
        assert_eq!(t1.grid, (1..=10).map(|i| 5.0 * i as f64).collect::<Vec<_>>());
        assert_eq!(
            t1.printed_means,
            vec![2.647, 1.244, 0.7047, 0.6079, 0.4298, 0.4905, 0.3124, 0.3032, 0.239, 0.289]
        );
        assert_eq!(*paper_fixture(2).unwrap().printed_means.last().unwrap(), 1.3001);
        let t3 = paper_fixture(3).unwrap();
        assert_eq!(t3.grid.first(), Some(&0.1));
        assert_eq!(t3.grid.last(), Some(&0.9));
        let t4 = paper_fixture(4).unwrap();
        assert_eq!(t4.printed_means[0], 2.1225);
        assert_eq!(t4.printed_means[9], 0.313);
        assert_eq!(paper_fixture(6).unwrap().printed_means[0], 1.026);
        let t7 = paper_fixture(7).unwrap();
        assert_eq!(t7.grid, (1..=10).map(|i| 10.0 * i as f64).collect::<Vec<_>>());
        assert_eq!(paper_fixture(2).unwrap().trials[1][3], 4.25);
    }

    #[test]
    fn consistency_flags() {
        let r1 = fixture_consistency_report(&paper_fixture(1).unwrap());
        assert!(r1[0].delta.abs() < 1e-9);
        assert!(r1[8].flagged);
        assert!((r1[8].recomputed_mean - 0.2906).abs() < 1e-9);
        assert_eq!(r1.iter().filter(|r| r.flagged).count(), 1);

        let r5 = fixture_consistency_report(&paper_fixture(5).unwrap());
        assert!(r5[4].delta.abs() < 1e-9);
        assert!(r5[5].flagged); // lambda = 2: 0.62 vs 0.67

        let r2 = fixture_consistency_report(&paper_fixture(2).unwrap());
        assert!((r2[0].recomputed_mean - 3.3376).abs() < 1e-9);
        assert!(!r2[0].flagged);

        let r7 = fixture_consistency_report(&paper_fixture(7).unwrap());
        assert!(r7[0].flagged); // sigma^2 = 10: ~1.026 vs 1.193
    }

    #[test]
    fn csv_round_trip() {
        for id in 1..=7 {
            let f = paper_fixture(id).unwrap();
            assert_eq!(PaperFixture::from_csv(id, &f.to_csv()).unwrap(), f);
        }
    }

    #[test]
    fn rejects_bad_csv() {
        assert!(PaperFixture::from_csv(1, "x,y\n1,2\n").is_err());
        assert!(PaperFixture::from_csv(1, "param,t1,printed_mean\n1,a,2\n").is_err());
    }
}
