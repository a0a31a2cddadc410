//! Report tables emitted as aligned text or CSV. Cells never contain commas
//! or newlines, so the CSV form parses back and re-emits byte for byte.

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        debug_assert!(
            row.iter().all(|c| !c.contains(',') && !c.contains('\n')),
            "cells must stay CSV-safe"
        );
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Space-aligned columns; empty cells collapse, trailing blanks trimmed.
    pub fn to_text(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0usize; cols];
        for (i, h) in self.header.iter().enumerate() {
            width[i] = h.len();
        }
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                width[i] = width[i].max(cell.len());
            }
        }
        let mut out = String::new();
        let mut emit = |cells: &[String]| {
            let mut line = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                line.push_str(&" ".repeat(width[i] - cell.len()));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        };
        emit(&self.header);
        for row in &self.rows {
            emit(row);
        }
        out
    }
}

pub fn seconds(v: f64) -> String {
    format!("{v:.3}")
}

pub fn ratio(v: f64) -> String {
    format!("{v:.4}")
}
