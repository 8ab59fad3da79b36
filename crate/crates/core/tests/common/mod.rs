//! Minimal JSON-schema checker covering exactly the keywords the shipped
//! schemas use: type, enum, pattern, required, properties,
//! additionalProperties (boolean false), items (single schema), minItems,
//! minimum, and $ref into #/definitions. Anything else in a schema is a
//! hard error so silent non-validation cannot creep in.

use regex::Regex;
use serde_json::Value;

const KNOWN_KEYWORDS: &[&str] = &[
    "$schema",
    "title",
    "definitions",
    "type",
    "enum",
    "pattern",
    "required",
    "properties",
    "additionalProperties",
    "items",
    "minItems",
    "minimum",
    "$ref",
];

pub fn validate(schema: &Value, value: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, schema, value, "$", &mut errors);
    errors
}

pub fn assert_valid(schema: &Value, value: &Value) {
    let errors = validate(schema, value);
    assert!(errors.is_empty(), "schema violations:\n{}", errors.join("\n"));
}

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let name = reference
        .strip_prefix("#/definitions/")
        .unwrap_or_else(|| panic!("unsupported $ref {reference}"));
    root.get("definitions")
        .and_then(|d| d.get(name))
        .unwrap_or_else(|| panic!("dangling $ref {reference}"))
}

fn type_matches(expected: &str, value: &Value) -> bool {
    match expected {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        "number" => value.is_number(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        other => panic!("unsupported type keyword {other}"),
    }
}

fn check(root: &Value, schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    let obj = schema.as_object().expect("schema node is an object");
    for key in obj.keys() {
        assert!(
            KNOWN_KEYWORDS.contains(&key.as_str()),
            "schema keyword {key} at {path} is not implemented by this checker"
        );
    }

    if let Some(reference) = obj.get("$ref").and_then(Value::as_str) {
        check(root, resolve(root, reference), value, path, errors);
        return;
    }

    if let Some(expected) = obj.get("type").and_then(Value::as_str) {
        if !type_matches(expected, value) {
            errors.push(format!("{path}: expected {expected}, got {value}"));
            return;
        }
    }

    if let Some(allowed) = obj.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{path}: {value} not in enum {allowed:?}"));
        }
    }

    if let Some(pattern) = obj.get("pattern").and_then(Value::as_str) {
        let re = Regex::new(pattern).expect("valid pattern");
        let s = value.as_str().unwrap_or_default();
        if !re.is_match(s) {
            errors.push(format!("{path}: {s:?} does not match {pattern}"));
        }
    }

    if let Some(minimum) = obj.get("minimum").and_then(Value::as_i64) {
        let v = value.as_i64().or_else(|| value.as_u64().and_then(|u| i64::try_from(u).ok()));
        match v {
            Some(v) if v >= minimum => {}
            _ => errors.push(format!("{path}: {value} below minimum {minimum}")),
        }
    }

    if let Some(object) = value.as_object() {
        if let Some(required) = obj.get("required").and_then(Value::as_array) {
            for name in required {
                let name = name.as_str().expect("required entries are strings");
                if !object.contains_key(name) {
                    errors.push(format!("{path}: missing required field {name}"));
                }
            }
        }
        let properties = obj.get("properties").and_then(Value::as_object);
        if let Some(properties) = properties {
            for (name, sub) in properties {
                if let Some(v) = object.get(name) {
                    check(root, sub, v, &format!("{path}.{name}"), errors);
                }
            }
        }
        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
            for name in object.keys() {
                let declared =
                    properties.map(|p| p.contains_key(name)).unwrap_or(false);
                if !declared {
                    errors.push(format!("{path}: undeclared field {name}"));
                }
            }
        }
    }

    if let Some(array) = value.as_array() {
        if let Some(min_items) = obj.get("minItems").and_then(Value::as_u64) {
            if (array.len() as u64) < min_items {
                errors.push(format!(
                    "{path}: {} items, need at least {min_items}",
                    array.len()
                ));
            }
        }
        if let Some(items) = obj.get("items") {
            for (ix, item) in array.iter().enumerate() {
                check(root, items, item, &format!("{path}[{ix}]"), errors);
            }
        }
    }
}

pub fn load_schema(name: &str) -> Value {
    let path = format!("{}/schema/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path}: {e}"));
    serde_json::from_str(&text).expect("schema parses")
}
