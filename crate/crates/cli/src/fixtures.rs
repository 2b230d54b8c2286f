//! The shipped worked-example code files, embedded at compile time.

use rankmetric::{MatrixCode, VectorCode};

use crate::codefile::{Code, CodeFile};

pub const ALL: &[(&str, &str)] = &[
    ("expansion_vector", include_str!("../fixtures/expansion_vector.json")),
    ("expansion_vector_dual", include_str!("../fixtures/expansion_vector_dual.json")),
    ("expansion_matrices", include_str!("../fixtures/expansion_matrices.json")),
    ("expansion_dual_matrices", include_str!("../fixtures/expansion_dual_matrices.json")),
    ("dual_expansion_matrices", include_str!("../fixtures/dual_expansion_matrices.json")),
    ("equal_columns_2x2", include_str!("../fixtures/equal_columns_2x2.json")),
    ("equal_columns_3x2", include_str!("../fixtures/equal_columns_3x2.json")),
    ("top_row_3x2", include_str!("../fixtures/top_row_3x2.json")),
    ("gf4_line", include_str!("../fixtures/gf4_line.json")),
    ("extension_domain", include_str!("../fixtures/extension_domain.json")),
    ("zero_2x3", include_str!("../fixtures/zero_2x3.json")),
];

pub fn load(name: &str) -> Code {
    let text = ALL
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
        .1;
    CodeFile::parse(text)
        .and_then(|f| f.to_code())
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn matrix(name: &str) -> MatrixCode {
    match load(name) {
        Code::Matrix(c) => c,
        Code::Vector(_) => panic!("fixture {name} is a vector code"),
    }
}

pub fn vector(name: &str) -> VectorCode {
    match load(name) {
        Code::Vector(c) => c,
        Code::Matrix(_) => panic!("fixture {name} is a matrix code"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for (name, _) in ALL {
            load(name);
        }
    }
}
