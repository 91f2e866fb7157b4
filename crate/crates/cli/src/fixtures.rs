//! Configurations shipped with the binary.

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "s1",
        description: "a02 = 2, a11 = 1; curve (x^2, x)",
        text: include_str!("../fixtures/s1.json"),
    },
    Fixture {
        name: "s2",
        description: "a02 = 1, a11 = 1, b3 = -6; curve ((1 - 2x) x^2, x); B = 0, F = 0",
        text: include_str!("../fixtures/s2.json"),
    },
    Fixture {
        name: "s2_variant",
        description: "s2 with c_m = 1; E and F both nonzero",
        text: include_str!("../fixtures/s2_variant.json"),
    },
    Fixture {
        name: "s3",
        description: "a02 = 2; curve (x^4, x^3), family mpq with m = 3, p = 1, q = 1",
        text: include_str!("../fixtures/s3.json"),
    },
    Fixture {
        name: "a_zero",
        description: "a02 = 2, a11 = 1; curve ((1 + x) x^2, x); A = 0",
        text: include_str!("../fixtures/a_zero.json"),
    },
    Fixture {
        name: "c_zero",
        description: "a02 = 2, b3 = 2; curve (x^2, x); C = 0",
        text: include_str!("../fixtures/c_zero.json"),
    },
];

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
