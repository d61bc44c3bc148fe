//! Output assembly. Every command builds a [`Doc`]: a JSON value, a list of
//! text blocks for the table format, and one flat table for CSV.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    fn render_text(&self, out: &mut String) {
        let cols = self.header.len();
        let mut width = vec![0usize; cols];
        for row in std::iter::once(&self.header).chain(&self.rows) {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                if i + 1 < row.len() {
                    line.extend(std::iter::repeat_n(' ', width[i] - cell.chars().count()));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }

    fn render_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        if !self.header.is_empty() {
            w.write_record(&self.header).expect("in-memory write");
        }
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

pub enum Block {
    Line(String),
    Table(Table),
}

pub struct Doc {
    pub json: Value,
    pub text: Vec<Block>,
    pub csv: Table,
}

impl Doc {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.render_csv(),
            Format::Table => {
                let mut out = String::new();
                for block in &self.text {
                    match block {
                        Block::Line(l) => {
                            out.push_str(l);
                            out.push('\n');
                        }
                        Block::Table(t) => t.render_text(&mut out),
                    }
                }
                out
            }
        }
    }
}

/// `(a,b,c)` for weights and partitions.
pub fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_and_csv() {
        let mut t = Table::new(["k", "dim"]);
        t.push(["(2,0)", "1"]);
        t.push(["(1,1)", "100"]);
        let doc = Doc {
            json: serde_json::json!({"a": "1"}),
            text: vec![Block::Line("title".into()), Block::Table(t.clone())],
            csv: t,
        };
        assert_eq!(doc.render(Format::Table), "title\nk      dim\n(2,0)  1\n(1,1)  100\n");
        assert_eq!(doc.render(Format::Csv), "k,dim\n\"(2,0)\",1\n\"(1,1)\",100\n");
        assert_eq!(doc.render(Format::Json), "{\n  \"a\": \"1\"\n}\n");
    }
}
