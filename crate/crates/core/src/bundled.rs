//! Presentation files shipped with the library.

use serde::Serialize;

use crate::error::ParseError;
use crate::file::PresentationFile;
use crate::presentation::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BundledExample {
    pub name: &'static str,
    /// What the example is expected to produce.
    pub expected: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
}

impl BundledExample {
    pub fn file(&self) -> PresentationFile {
        PresentationFile::from_json(self.source).expect("bundled files are valid JSON")
    }

    pub fn presentation(&self) -> Result<Presentation, ParseError> {
        self.file().to_presentation()
    }
}

pub const BUNDLED: &[BundledExample] = &[
    BundledExample {
        name: "kxy",
        expected: "certified",
        summary: "k<x, y | xy - yx> with deg-lex x > y and deg-lex y > x",
        source: include_str!("../presentations/kxy.pres"),
    },
    BundledExample {
        name: "exrn",
        expected: "certified",
        summary: "k<x1, x2, x3 | x3 = x1*x2 + x3^2>",
        source: include_str!("../presentations/exrn.pres"),
    },
    BundledExample {
        name: "family",
        expected: "certified",
        summary: "one instance of k<X, Y | u = phi> with u admitting no decomposition u'u''u'",
        source: include_str!("../presentations/family.pres"),
    },
    BundledExample {
        name: "para-example",
        expected: "certified",
        summary: "Para(x1*x2 + y^2) = k<x1, x2, y | y = x1*x2 + y^2>",
        source: include_str!("../presentations/para-example.pres"),
    },
    BundledExample {
        name: "main",
        expected: "certified",
        summary: "the two-generator parafree algebra with relations r1..r4",
        source: include_str!("../presentations/main.pres"),
    },
    BundledExample {
        name: "counterexample-two",
        expected: "gr1-rank-1",
        summary: "s = x1*x2 + x3 + x4: normal words x3, x4 are dependent in I/I^2",
        source: include_str!("../presentations/counterexample-two.pres"),
    },
    BundledExample {
        name: "counterexample-one",
        expected: "unsupported-order",
        summary: "s_n = x2^n*x3^n*x4^n - x1 under a well-order that is not an N-order; documentation only, \
                  the order is rejected when loading",
        source: include_str!("../presentations/counterexample-one.pres"),
    },
];

pub fn bundled(name: &str) -> Option<&'static BundledExample> {
    BUNDLED.iter().find(|b| b.name == name)
}
