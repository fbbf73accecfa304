//! JSON rule files: `{"name": .., "outputs": [0|1|"*"; 12], "column_order": [..]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{NeighborhoodClass, RuleError, RuleOutput, SymRuleTable};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleJson {
    pub name: String,
    pub outputs: Vec<Value>,
    pub column_order: Vec<String>,
}

impl RuleJson {
    pub fn from_table(table: &SymRuleTable) -> Self {
        RuleJson {
            name: table.name.clone().unwrap_or_default(),
            outputs: table
                .outputs
                .iter()
                .map(|o| match o {
                    RuleOutput::Zero => Value::from(0),
                    RuleOutput::One => Value::from(1),
                    RuleOutput::Wildcard => Value::from("*"),
                })
                .collect(),
            column_order: NeighborhoodClass::COLUMNS.iter().map(|c| c.name()).collect(),
        }
    }

    /// Converts to a table in canonical column order. `column_order` may be any
    /// permutation of the twelve class names.
    pub fn to_table(&self) -> Result<SymRuleTable, RuleError> {
        if self.outputs.len() != 12 {
            return Err(RuleError::WrongArity(self.outputs.len()));
        }
        if self.column_order.len() != 12 {
            return Err(RuleError::WrongArity(self.column_order.len()));
        }
        let mut outputs = [None; 12];
        for (class_name, value) in self.column_order.iter().zip(&self.outputs) {
            let col = NeighborhoodClass::from_name(class_name)?.column();
            if outputs[col].is_some() {
                return Err(RuleError::DuplicateClass(class_name.clone()));
            }
            outputs[col] = Some(parse_output(value)?);
        }
        let outputs = outputs.map(|o| o.expect("twelve distinct classes cover every column"));
        let table = SymRuleTable::new(outputs);
        Ok(if self.name.is_empty() {
            table
        } else {
            table.with_name(self.name.clone())
        })
    }

    pub fn parse(text: &str) -> Result<SymRuleTable, RuleError> {
        let raw: RuleJson =
            serde_json::from_str(text).map_err(|e| RuleError::Json(e.to_string()))?;
        raw.to_table()
    }

    pub fn render(table: &SymRuleTable) -> String {
        serde_json::to_string(&RuleJson::from_table(table)).expect("rule JSON serializes")
    }
}

fn parse_output(value: &Value) -> Result<RuleOutput, RuleError> {
    match value {
        Value::Number(n) if n.as_u64() == Some(0) => Ok(RuleOutput::Zero),
        Value::Number(n) if n.as_u64() == Some(1) => Ok(RuleOutput::One),
        Value::String(s) if s == "*" => Ok(RuleOutput::Wildcard),
        other => Err(RuleError::InvalidOutput(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::builtin;

    #[test]
    fn round_trip_builtin() {
        let tb = builtin("tb").unwrap().printed;
        let text = RuleJson::render(&tb);
        assert!(text.contains("\"*\""));
        assert_eq!(RuleJson::parse(&text).unwrap(), tb);
    }

    #[test]
    fn permuted_columns_are_reordered() {
        let tb = builtin("tb").unwrap().pinned;
        let mut raw = RuleJson::from_table(&tb);
        raw.outputs.reverse();
        raw.column_order.reverse();
        assert_eq!(raw.to_table().unwrap(), tb);
    }

    #[test]
    fn rejects_bad_input() {
        let tb = builtin("tb").unwrap().pinned;
        let mut raw = RuleJson::from_table(&tb);
        raw.column_order[1] = raw.column_order[0].clone();
        assert!(matches!(raw.to_table(), Err(RuleError::DuplicateClass(_))));

        let mut raw = RuleJson::from_table(&tb);
        raw.outputs[3] = Value::from(2);
        assert!(matches!(raw.to_table(), Err(RuleError::InvalidOutput(_))));

        let mut raw = RuleJson::from_table(&tb);
        raw.column_order[0] = "2/111/1".into();
        assert!(matches!(raw.to_table(), Err(RuleError::UnknownClass(_))));

        assert!(matches!(RuleJson::parse("{"), Err(RuleError::Json(_))));
    }
}
