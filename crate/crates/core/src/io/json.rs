//! JSON coloring documents.
//!
//! ```json
//! {
//!   "order": 2,
//!   "num_colors": 4,
//!   "cells": [0, 1, 2, 3],
//!   "verification": { "proper": true, "equitable": true, ... }
//! }
//! ```
//!
//! `cells` holds the residues in row-major order. `verification` is optional
//! and ignored on import.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::verify::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub proper: bool,
    pub conflicts: usize,
    pub equitable: bool,
    pub max_class: usize,
    pub min_class: usize,
    pub class_sizes: BTreeMap<usize, usize>,
}

impl From<&VerificationReport> for VerificationSummary {
    fn from(r: &VerificationReport) -> Self {
        VerificationSummary {
            proper: r.proper,
            conflicts: r.conflicts.len(),
            equitable: r.equitable,
            max_class: r.max_class,
            min_class: r.min_class,
            class_sizes: r.class_sizes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDocument {
    pub order: usize,
    pub num_colors: usize,
    pub cells: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSummary>,
}

pub fn export_coloring_json(coloring: &Coloring, report: Option<&VerificationReport>) -> String {
    let doc = ColoringDocument {
        order: coloring.order(),
        num_colors: coloring.num_colors(),
        cells: coloring.colors().to_vec(),
        verification: report.map(VerificationSummary::from),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("coloring document serializes");
    text.push('\n');
    text
}

/// 1-based line and column of byte `offset` in `text`.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.len(), |i| before.len() - i - 1)
        + 1;
    (line, column)
}

pub fn import_coloring_json(text: &str) -> Result<Coloring> {
    let doc: ColoringDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Coloring::new(doc.order, doc.num_colors, doc.cells).map_err(|e| {
        let (line, column) = text
            .find("\"cells\"")
            .map_or((1, 1), |at| position(text, at));
        Error::Parse {
            line,
            column,
            message: e.to_string(),
        }
    })
}
