//! The aligned counts/normalized expression matrices plus clinical records.

use std::collections::{HashMap, HashSet};
use std::path::PathBuf;

use crate::table::{KeyedMatrix, Table};

use super::ExpressionError;

/// Clinical record for one patient.
#[derive(Debug, Clone, PartialEq)]
pub struct PatientRecord {
    pub patient_id: String,
    pub age: Option<f64>,
    pub psa: Option<f64>,
    /// Grade group in 1..=5.
    pub isup: u8,
    pub stage: Option<String>,
    pub bcr_event: bool,
    /// Days to biochemical recurrence or censoring.
    pub bcr_time_days: Option<f64>,
}

impl PatientRecord {
    fn validate(&self) -> Result<(), ExpressionError> {
        if !(1..=5).contains(&self.isup) {
            return Err(ExpressionError::InvalidClinical {
                patient: self.patient_id.clone(),
                field: "isup",
                message: format!("grade {} outside 1..=5", self.isup),
            });
        }
        match self.bcr_time_days {
            Some(t) if t < 0.0 => Err(ExpressionError::InvalidClinical {
                patient: self.patient_id.clone(),
                field: "bcr_time_days",
                message: format!("negative time {t}"),
            }),
            None if self.bcr_event => Err(ExpressionError::InvalidClinical {
                patient: self.patient_id.clone(),
                field: "bcr_time_days",
                message: "missing time for a recurrence event".to_string(),
            }),
            _ => Ok(()),
        }
    }
}

/// Patients x transcripts count and normalized matrices with aligned ids.
#[derive(Debug, Clone)]
pub struct ExpressionDataset {
    patients: Vec<PatientRecord>,
    transcript_ids: Vec<String>,
    /// Row-major, patients x transcripts.
    counts: Vec<u32>,
    normalized: Vec<f64>,
}

impl ExpressionDataset {
    pub fn n_patients(&self) -> usize {
        self.patients.len()
    }

    pub fn n_transcripts(&self) -> usize {
        self.transcript_ids.len()
    }

    pub fn patients(&self) -> &[PatientRecord] {
        &self.patients
    }

    pub fn patient_ids(&self) -> Vec<&str> {
        self.patients.iter().map(|p| p.patient_id.as_str()).collect()
    }

    pub fn patient_index(&self, id: &str) -> Option<usize> {
        self.patients.iter().position(|p| p.patient_id == id)
    }

    pub fn transcript_ids(&self) -> &[String] {
        &self.transcript_ids
    }

    pub fn transcript_index(&self, id: &str) -> Option<usize> {
        self.transcript_ids.iter().position(|t| t == id)
    }

    pub fn count(&self, patient: usize, transcript: usize) -> u32 {
        self.counts[patient * self.transcript_ids.len() + transcript]
    }

    pub fn value(&self, patient: usize, transcript: usize) -> f64 {
        self.normalized[patient * self.transcript_ids.len() + transcript]
    }

    /// Normalized values of one transcript across all patients.
    pub fn transcript_column(&self, transcript: usize) -> Vec<f64> {
        (0..self.n_patients())
            .map(|p| self.value(p, transcript))
            .collect()
    }

    /// All transcript columns, in transcript order.
    pub fn transcript_columns(&self) -> Vec<Vec<f64>> {
        (0..self.n_transcripts())
            .map(|t| self.transcript_column(t))
            .collect()
    }

    /// Dataset restricted to the given transcript indices (in given order).
    pub fn select_transcripts(&self, keep: &[usize]) -> ExpressionDataset {
        let mut counts = Vec::with_capacity(self.n_patients() * keep.len());
        let mut normalized = Vec::with_capacity(self.n_patients() * keep.len());
        for p in 0..self.n_patients() {
            for &t in keep {
                counts.push(self.count(p, t));
                normalized.push(self.value(p, t));
            }
        }
        ExpressionDataset {
            patients: self.patients.clone(),
            transcript_ids: keep.iter().map(|&t| self.transcript_ids[t].clone()).collect(),
            counts,
            normalized,
        }
    }

    /// Dataset restricted to the given patient indices (in given order).
    pub fn select_patients(&self, keep: &[usize]) -> ExpressionDataset {
        let nt = self.n_transcripts();
        let mut counts = Vec::with_capacity(keep.len() * nt);
        let mut normalized = Vec::with_capacity(keep.len() * nt);
        for &p in keep {
            counts.extend_from_slice(&self.counts[p * nt..(p + 1) * nt]);
            normalized.extend_from_slice(&self.normalized[p * nt..(p + 1) * nt]);
        }
        ExpressionDataset {
            patients: keep.iter().map(|&p| self.patients[p].clone()).collect(),
            transcript_ids: self.transcript_ids.clone(),
            counts,
            normalized,
        }
    }

    /// Replace the normalized matrix in place (e.g. after a log transform).
    pub fn set_normalized(&mut self, values: Vec<f64>) {
        assert_eq!(values.len(), self.normalized.len());
        self.normalized = values;
    }

    pub fn normalized(&self) -> &[f64] {
        &self.normalized
    }
}

/// File locations for [`load_expression`].
#[derive(Debug, Clone)]
pub struct ExpressionTablePaths {
    pub counts: PathBuf,
    pub normalized: PathBuf,
    pub clinical: PathBuf,
    pub annotation: PathBuf,
}

fn parse_optional_f64(
    cell: &str,
    patient: &str,
    field: &'static str,
) -> Result<Option<f64>, ExpressionError> {
    if cell.is_empty() || cell == "NA" {
        return Ok(None);
    }
    cell.parse::<f64>()
        .map(Some)
        .map_err(|e| ExpressionError::InvalidClinical {
            patient: patient.to_string(),
            field,
            message: e.to_string(),
        })
}

fn parse_bool(cell: &str, patient: &str, field: &'static str) -> Result<bool, ExpressionError> {
    match cell {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        other => Err(ExpressionError::InvalidClinical {
            patient: patient.to_string(),
            field,
            message: format!("expected boolean, got '{other}'"),
        }),
    }
}

/// Load and align the expression matrices with clinical metadata, dropping
/// transcripts not annotated as protein coding.
///
/// Matrix tables carry transcripts as rows and patients as columns; the
/// clinical table is keyed by `patient_id`; the annotation table maps
/// `transcript_id` to a `protein_coding` flag.
pub fn load_expression(paths: &ExpressionTablePaths) -> Result<ExpressionDataset, ExpressionError> {
    let counts_tab = KeyedMatrix::read(&paths.counts)?;
    let norm_tab = KeyedMatrix::read(&paths.normalized)?;

    if counts_tab.row_ids != norm_tab.row_ids {
        return Err(ExpressionError::TableMismatch(
            "transcript rows differ between counts and normalized tables".to_string(),
        ));
    }
    if counts_tab.col_ids != norm_tab.col_ids {
        return Err(ExpressionError::TableMismatch(
            "patient columns differ between counts and normalized tables".to_string(),
        ));
    }

    // Annotation: keep transcripts explicitly flagged protein coding.
    let ann = Table::read(&paths.annotation)?;
    let id_col = ann.column("transcript_id")?;
    let pc_col = ann.column("protein_coding")?;
    let mut coding: HashSet<&str> = HashSet::new();
    for row in &ann.rows {
        if row[pc_col] == "true" || row[pc_col] == "1" {
            coding.insert(row[id_col].as_str());
        }
    }

    // Clinical records keyed by patient id.
    let clin = Table::read(&paths.clinical)?;
    let pid_col = clin.column("patient_id")?;
    let age_col = clin.column("age")?;
    let psa_col = clin.column("psa")?;
    let isup_col = clin.column("isup")?;
    let stage_col = clin.column("stage").ok();
    let ev_col = clin.column("bcr_event")?;
    let time_col = clin.column("bcr_time_days")?;
    let mut records: HashMap<String, PatientRecord> = HashMap::new();
    for row in &clin.rows {
        let pid = row[pid_col].clone();
        let record = PatientRecord {
            patient_id: pid.clone(),
            age: parse_optional_f64(&row[age_col], &pid, "age")?,
            psa: parse_optional_f64(&row[psa_col], &pid, "psa")?,
            isup: row[isup_col]
                .parse::<u8>()
                .map_err(|e| ExpressionError::InvalidClinical {
                    patient: pid.clone(),
                    field: "isup",
                    message: e.to_string(),
                })?,
            stage: stage_col.map(|c| row[c].clone()).filter(|s| !s.is_empty()),
            bcr_event: parse_bool(&row[ev_col], &pid, "bcr_event")?,
            bcr_time_days: parse_optional_f64(&row[time_col], &pid, "bcr_time_days")?,
        };
        record.validate()?;
        if records.insert(pid.clone(), record).is_some() {
            return Err(ExpressionError::DuplicatePatient(pid));
        }
    }

    let mut patients = Vec::with_capacity(counts_tab.col_ids.len());
    for pid in &counts_tab.col_ids {
        let record = records
            .get(pid)
            .cloned()
            .ok_or_else(|| ExpressionError::UnmatchedPatient(pid.clone()))?;
        patients.push(record);
    }

    // Transcript selection: annotated protein-coding rows, matrix order.
    let kept: Vec<usize> = counts_tab
        .row_ids
        .iter()
        .enumerate()
        .filter(|(_, id)| coding.contains(id.as_str()))
        .map(|(i, _)| i)
        .collect();
    if kept.is_empty() {
        return Err(ExpressionError::EmptyResult);
    }

    let n_p = patients.len();
    let mut counts = vec![0u32; n_p * kept.len()];
    let mut normalized = vec![0f64; n_p * kept.len()];
    for (t_new, &t_old) in kept.iter().enumerate() {
        for p in 0..n_p {
            let raw = counts_tab.get(t_old, p);
            if raw < 0.0 || raw.fract() != 0.0 {
                return Err(ExpressionError::InvalidCount {
                    patient: counts_tab.col_ids[p].clone(),
                    transcript: counts_tab.row_ids[t_old].clone(),
                });
            }
            counts[p * kept.len() + t_new] = raw as u32;
            normalized[p * kept.len() + t_new] = norm_tab.get(t_old, p);
        }
    }

    Ok(ExpressionDataset {
        patients,
        transcript_ids: kept
            .iter()
            .map(|&t| counts_tab.row_ids[t].clone())
            .collect(),
        counts,
        normalized,
    })
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// Build a dataset from per-patient count rows; normalized values mirror
    /// the counts as floats.
    pub fn dataset_from_parts(transcripts: &[&str], counts: Vec<Vec<u32>>) -> ExpressionDataset {
        let n_t = transcripts.len();
        let patients: Vec<PatientRecord> = (0..counts.len())
            .map(|p| PatientRecord {
                patient_id: format!("P{p:03}"),
                age: Some(60.0),
                psa: None,
                isup: 1 + (p % 5) as u8,
                stage: None,
                bcr_event: false,
                bcr_time_days: Some(1000.0),
            })
            .collect();
        let mut flat = Vec::with_capacity(counts.len() * n_t);
        for row in &counts {
            assert_eq!(row.len(), n_t);
            flat.extend_from_slice(row);
        }
        let normalized = flat.iter().map(|&c| c as f64).collect();
        ExpressionDataset {
            patients,
            transcript_ids: transcripts.iter().map(|s| s.to_string()).collect(),
            counts: flat,
            normalized,
        }
    }

    /// Full constructor for synthetic pipelines and tests.
    pub fn dataset_from_matrices(
        patients: Vec<PatientRecord>,
        transcript_ids: Vec<String>,
        counts: Vec<u32>,
        normalized: Vec<f64>,
    ) -> ExpressionDataset {
        assert_eq!(counts.len(), patients.len() * transcript_ids.len());
        assert_eq!(normalized.len(), counts.len());
        ExpressionDataset {
            patients,
            transcript_ids,
            counts,
            normalized,
        }
    }
}
