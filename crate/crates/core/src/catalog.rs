//! Built-in algebras with their gradings, auxiliary matrices and scheme data,
//! and a claim runner that checks each stored fact against a fresh computation.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commutative::{CIdeal, CPoly};
use crate::error::{Error, Result};
use crate::exactnum::FieldValue;
use crate::gradedsearch::{
    check_homogeneous, covariant_hilbert_check, free_module_certificate, identity_component_report,
    poincare_report, Commutation, GradeAssignment,
};
use crate::groups16::{build_group, IntPolynomial};
use crate::linalg::Matrix;
use crate::ncgroebner::{complete, regular_sequence_check};
use crate::presentations::{apply_linear_substitution, parse_presentation, relation_span_equal, NCPoly, Presentation};
use crate::projgeometry::{
    self as geo, component_intersections, component_parametrization_check, incidence_lines, line_label,
    line_scheme_ideal, lines_through_point, point_scheme_ideal, points_on_line_in_lines, quadric_ruling_check,
    relation_matrix, ruling_pluecker, verify_point_and_tau, LineInP3, LineMeets, Parametrization, ProjPoint,
    QuadricRuling, SchemeComponent,
};
use crate::quadraticdual::{frobenius_check, koszul_complex_check, quadratic_dual, PolyMatrix};

pub const KEYS: [&str; 11] = [
    "R_original",
    "R_YZ",
    "S",
    "T",
    "R_prime",
    "craw_m2",
    "example_2_5_D8",
    "S_points",
    "T_points",
    "S_dual",
    "S_mod_z",
];

/// Keys that carry claims of their own.
pub const CLAIM_KEYS: [&str; 7] = ["R_original", "R_YZ", "S", "T", "R_prime", "craw_m2", "example_2_5_D8"];

#[derive(Clone, Debug, Serialize)]
pub struct GradeData {
    pub group: String,
    pub words: Vec<String>,
}

impl GradeData {
    fn new(group: &str, words: &[&str]) -> Self {
        GradeData {
            group: group.into(),
            words: words.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn assignment(&self) -> Result<GradeAssignment> {
        let g = build_group(&self.group)?;
        let words: Vec<&str> = self.words.iter().map(|s| s.as_str()).collect();
        GradeAssignment::from_words(g, &words)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Substitution {
    pub target: String,
    /// Row k gives the k-th new generator in the old ones.
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub key: String,
    pub description: String,
    pub presentation: Presentation,
    pub grading: Option<GradeData>,
    pub substitution: Option<Substitution>,
    pub koszul_matrices: Vec<Vec<Vec<String>>>,
    pub central_sequence: Vec<String>,
    pub identity_generators: Vec<String>,
    pub groebner_basis: Vec<String>,
    /// Key of the presentation whose relation order matches the point-scheme matrix.
    pub point_order: Option<String>,
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn source(key: &str) -> Option<&'static str> {
    Some(match key {
        "R_original" => include_str!("../data/R_original.alg"),
        "R_YZ" => include_str!("../data/R_YZ.alg"),
        "S" => include_str!("../data/S.alg"),
        "T" => include_str!("../data/T.alg"),
        "R_prime" => include_str!("../data/R_prime.alg"),
        "craw_m2" => include_str!("../data/craw_m2.alg"),
        "example_2_5_D8" => include_str!("../data/example_2_5_D8.alg"),
        "S_points" => include_str!("../data/S_points.alg"),
        "T_points" => include_str!("../data/T_points.alg"),
        "S_dual" => include_str!("../data/S_dual.alg"),
        "S_mod_z" => include_str!("../data/S_mod_z.alg"),
        _ => return None,
    })
}

fn s_koszul() -> Vec<Vec<Vec<String>>> {
    let m = |rows: &[&[&str]]| rows.iter().map(|r| strs(r)).collect::<Vec<_>>();
    vec![
        m(&[&["x1", "x2", "x3", "x4"]]),
        m(&[
            &["x2", "0", "x3", "0", "0", "x4"],
            &["0", "x1", "-x4", "0", "x3", "0"],
            &["-x3", "0", "0", "x2", "-x1", "0"],
            &["0", "-x4", "0", "-x1", "0", "-x2"],
        ]),
        m(&[
            &["0", "x1", "-x3", "0"],
            &["x2", "0", "0", "-x4"],
            &["0", "0", "x1", "-x2"],
            &["-x4", "x3", "0", "0"],
            &["-x3", "0", "x2", "0"],
            &["0", "-x4", "0", "x1"],
        ]),
        m(&[&["x1"], &["x2"], &["x3"], &["x4"]]),
    ]
}

pub fn load_builtin(key: &str) -> Result<NamedAlgebra> {
    let text = source(key).ok_or_else(|| Error::UnknownKey(key.to_string()))?;
    let presentation = parse_presentation(text)?;
    let mut a = NamedAlgebra {
        key: key.into(),
        description: String::new(),
        presentation,
        grading: None,
        substitution: None,
        koszul_matrices: Vec::new(),
        central_sequence: Vec::new(),
        identity_generators: Vec::new(),
        groebner_basis: Vec::new(),
        point_order: None,
    };
    match key {
        "R_original" => {
            a.description = "R, graded by the modular group of order 16".into();
            a.grading = Some(GradeData::new("M16", &["a", "acd", "ab", "abc"]));
            a.substitution = Some(Substitution {
                target: "R_YZ".into(),
                matrix: vec![vec![1, 1, 1, 1], vec![-1, 1, -1, 1], vec![-1, 1, 1, -1], vec![-1, -1, 1, 1]],
            });
            a.identity_generators = strs(&["x1*x2", "x2*x1", "x3*x4", "x4*x3"]);
        }
        "R_YZ" => {
            a.description = "R as a double Ore extension, in the generators Y1, Y2, Z1, Z2".into();
            a.central_sequence = strs(&["x2^2 - x1^2", "x4^2 - x3^2", "x1^2*x2^2", "x3^2*x4^2"]);
            a.point_order = Some("R_YZ".into());
        }
        "S" | "T" => {
            a.grading = Some(GradeData::new("SD16", &["b", "bc", "ab", "abcd"]));
            a.identity_generators = strs(&["x1^2", "x2^2", "x3*x4", "x4*x3"]);
            if key == "S" {
                a.description = "S, graded by the semidihedral group of order 16".into();
                a.koszul_matrices = s_koszul();
                a.central_sequence = strs(&[
                    "x4*x3 + x1^2 + x2^2 + x3*x4",
                    "x1^2*x4*x3 + x3*x1^2*x4",
                    "x2^2*x4*x3 + x2^2*x1^2 + x3*x2^2*x4 + x3^2*x2*x1",
                    "x3^4",
                ]);
                a.groebner_basis = strs(&[
                    "x1*x2 - x3^2",
                    "x4^2 - x2*x1",
                    "x1*x3 - x2*x4",
                    "x4*x1 - x3*x2",
                    "x2*x3 - x3*x1",
                    "x4*x2 - x1*x4",
                    "x4*x3^2 - x3*x2^2",
                    "x4*x3*x2 - x2*x1^2",
                    "x4*x3*x1 - x1*x4*x3",
                ]);
                a.point_order = Some("S_points".into());
            } else {
                a.description = "T, graded by the semidihedral group of order 16".into();
                a.central_sequence = strs(&[
                    "(x4*x3)^2 + x1^4 + x2^4 + (x3*x4)^2",
                    "x3^4",
                    "x1^4*(x4*x3)^2 + x3*x1^4*x4*x3*x4",
                    "x2^4*(x4*x3)^2 + x2^4*x1^4 + x3*x2^4*x4*x3*x4 + x3^2*x2^3*x1^3",
                ]);
                a.point_order = Some("T_points".into());
            }
        }
        "R_prime" => a.description = "twist of R by a 2-cocycle on the Klein four-group".into(),
        "craw_m2" => {
            a.description = "k<u,v>/(u^2 - v^2) graded by the modular group of order 16".into();
            a.grading = Some(GradeData::new("modular_order16_craw", &["a", "b"]));
        }
        "example_2_5_D8" => {
            a.description = "k_q[x,z][y; sigma] with a = q = 1, graded by D8".into();
            a.grading = Some(GradeData::new("D8", &["r", "r*rho", "r*rho^2"]));
        }
        "S_points" => a.description = "S with relations in the order used for its relation matrix".into(),
        "T_points" => a.description = "T with relations in the order used for its relation matrix".into(),
        "S_dual" => a.description = "quadratic dual of S on a1..a4".into(),
        "S_mod_z" => a.description = "S modulo its central quadratic element".into(),
        _ => {}
    }
    if let Some(g) = &a.grading {
        let ga = g.assignment()?;
        if !check_homogeneous(&a.presentation, &ga) {
            return Err(Error::Verification(format!("{key}: relations are not homogeneous for the stored grading")));
        }
    }
    Ok(a)
}

impl NamedAlgebra {
    pub fn parse_list(&self, list: &[String]) -> Result<Vec<NCPoly>> {
        list.iter().map(|s| self.presentation.parse_poly(s)).collect()
    }

    pub fn koszul(&self) -> Result<Vec<PolyMatrix>> {
        self.koszul_matrices
            .iter()
            .map(|m| {
                let rows: Vec<Vec<&str>> = m.iter().map(|r| r.iter().map(|s| s.as_str()).collect()).collect();
                let refs: Vec<&[&str]> = rows.iter().map(|r| r.as_slice()).collect();
                PolyMatrix::parse(&refs, &self.presentation.names)
            })
            .collect()
    }

    /// Presentation whose relation order gives the point-scheme matrix.
    pub fn point_presentation(&self) -> Result<Presentation> {
        match &self.point_order {
            Some(k) => Ok(load_builtin(k)?.presentation),
            None => Ok(self.presentation.clone()),
        }
    }
}

// ---------------------------------------------------------------------------
// geometry fixtures

const P_TEXT: &str = "M12*M34 - M13*M24 + M14*M23";

/// The ten conic components for S (alpha = 1) or T (alpha = i).
pub fn conic_components(alpha: &str) -> Result<Vec<SchemeComponent>> {
    let a = alpha;
    let rows: [(&str, [String; 3]); 10] = [
        ("C1", ["M12".into(), "M34".into(), format!("M13 - {a}*M24")]),
        ("C2", ["M12".into(), "M34".into(), format!("M13 + {a}*M24")]),
        ("C3", ["M13".into(), "M24".into(), format!("M14 - {a}*M23")]),
        ("C4", ["M13".into(), "M24".into(), format!("M14 + {a}*M23")]),
        ("C5", ["M14".into(), "M23".into(), "M12 - M34".into()]),
        ("C6", ["M14".into(), "M23".into(), "M12 + M34".into()]),
        ("C7", ["M12 - M34".into(), format!("M13 - {a}*M24"), format!("M14 - {a}*M23")]),
        ("C8", ["M12 - M34".into(), format!("M13 + {a}*M24"), format!("M14 + {a}*M23")]),
        ("C9", ["M12 + M34".into(), format!("M13 - {a}*M24"), format!("M14 + {a}*M23")]),
        ("C10", ["M12 + M34".into(), format!("M13 + {a}*M24"), format!("M14 - {a}*M23")]),
    ];
    rows.iter()
        .map(|(label, gens)| {
            let g = [gens[0].as_str(), gens[1].as_str(), gens[2].as_str(), P_TEXT];
            SchemeComponent::pluecker(label, &g)
        })
        .collect()
}

/// The seven components of the line scheme of R in the Y/Z presentation, with
/// parametrizations of the planes by two points and of the joins by one point on each line.
pub fn r_line_components() -> Result<Vec<SchemeComponent>> {
    let comps: [(&str, &[&str]); 7] = [
        ("C1", &["M12", "M13 - M23", "M14 - M24"]),
        ("C2", &["M12", "M13 + M23", "M14 + M24"]),
        ("C3", &["M34", "M13 - M14", "M23 - M24"]),
        ("C4", &["M34", "M13 + M14", "M23 + M24"]),
        ("C5", &["M12", "M34", P_TEXT]),
        ("C6", &["M14 - M23", "M13 - M24", P_TEXT]),
        ("C7", &["M14 + M23", "M13 + M24", P_TEXT]),
    ];
    let mut out = Vec::new();
    for (k, (label, gens)) in comps.iter().enumerate() {
        let c = SchemeComponent::pluecker(label, gens)?;
        let par = if k < 4 {
            let (p, q) = r_plane_points(k);
            pluecker_parametrization(&["a", "b", "c", "d", "e", "f"], &p, &q)?
        } else {
            let (p, q) = r_join_points(k - 4);
            pluecker_parametrization(&["a", "b", "c", "d"], &p, &q)?
        };
        out.push(c.with_parametrization(par));
    }
    Ok(out)
}

/// Two generic points of H1..H4 in the parameters a..f.
fn r_plane_points(i: usize) -> ([&'static str; 4], [&'static str; 4]) {
    match i {
        0 => (["a", "a", "b", "c"], ["d", "d", "e", "f"]),
        1 => (["a", "-a", "b", "c"], ["d", "-d", "e", "f"]),
        2 => (["a", "b", "c", "c"], ["d", "e", "f", "f"]),
        _ => (["a", "b", "c", "-c"], ["d", "e", "f", "-f"]),
    }
}

/// A point on each line of the pairs (E12, E34), (E23, E14), (E13, E24).
fn r_join_points(i: usize) -> ([&'static str; 4], [&'static str; 4]) {
    match i {
        0 => (["0", "0", "a", "b"], ["c", "d", "0", "0"]),
        1 => (["a", "-a", "b", "b"], ["c", "c", "d", "-d"]),
        _ => (["a", "a", "b", "b"], ["c", "-c", "d", "-d"]),
    }
}

fn pluecker_parametrization(params: &[&str], p: &[&str; 4], q: &[&str; 4]) -> Result<Parametrization> {
    let names: Vec<String> = params.iter().map(|s| s.to_string()).collect();
    let pp = p.iter().map(|s| CPoly::parse(s, &names)).collect::<Result<Vec<_>>>()?;
    let qq = q.iter().map(|s| CPoly::parse(s, &names)).collect::<Result<Vec<_>>>()?;
    let coords = geo::PLUECKER_PAIRS
        .iter()
        .map(|&(i, j)| pp[i].mul(&qq[j]).sub(&pp[j].mul(&qq[i])))
        .collect();
    Ok(Parametrization { params: names, coords })
}

/// The six lines E_{i,j} of the point scheme of R, as zero loci of two linear forms.
pub fn r_point_lines() -> Vec<(String, LineInP3)> {
    let f = |v: [i64; 4]| v.iter().map(|&k| FieldValue::from_int(k)).collect::<Vec<_>>();
    let data: [(&str, [i64; 4], [i64; 4]); 6] = [
        ("E12", [1, 0, 0, 0], [0, 1, 0, 0]),
        ("E34", [0, 0, 1, 0], [0, 0, 0, 1]),
        ("E13", [1, -1, 0, 0], [0, 0, 1, -1]),
        ("E24", [1, 1, 0, 0], [0, 0, 1, 1]),
        ("E23", [1, 1, 0, 0], [0, 0, 1, -1]),
        ("E14", [1, -1, 0, 0], [0, 0, 1, 1]),
    ];
    data.iter()
        .map(|(n, a, b)| (n.to_string(), LineInP3::cut_out_by(&f(*a), &f(*b)).expect("line")))
        .collect()
}

/// Parametrization of each E_{i,j} in (a, b) and the stated image under tau.
pub fn r_tau_table() -> Vec<(&'static str, [&'static str; 4], [&'static str; 4])> {
    vec![
        ("E12", ["0", "0", "a", "b"], ["0", "0", "a", "-b"]),
        ("E34", ["a", "b", "0", "0"], ["a", "-b", "0", "0"]),
        ("E13", ["a", "a", "b", "b"], ["a", "-a", "b", "-b"]),
        ("E24", ["a", "-a", "b", "-b"], ["a", "a", "b", "b"]),
        ("E23", ["a", "-a", "b", "b"], ["a", "a", "-b", "b"]),
        ("E14", ["a", "a", "b", "-b"], ["a", "-a", "-b", "-b"]),
    ]
}

/// p1..p4 for R.
pub fn r_special_points() -> Vec<(String, ProjPoint)> {
    [[1, -1, 0, 0], [1, 1, 0, 0], [0, 0, 1, -1], [0, 0, 1, 1]]
        .iter()
        .enumerate()
        .map(|(k, c)| (format!("p{}", k + 1), ProjPoint::from_ints(c).expect("nonzero")))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadricRow {
    pub component: &'static str,
    pub quadric: &'static str,
    pub ruling: [&'static str; 2],
}

const fn qrow(component: &'static str, quadric: &'static str, a: &'static str, b: &'static str) -> QuadricRow {
    QuadricRow { component, quadric, ruling: [a, b] }
}

/// Quadrics and first rulings for the conic components.
pub fn quadric_table(key: &str) -> Result<Vec<QuadricRow>> {
    Ok(match key {
        "S" => vec![
            qrow("C1", "x1*x3 - x2*x4", "s*x1 + t*x2", "t*x3 + s*x4"),
            qrow("C2", "x1*x3 + x2*x4", "s*x1 + t*x2", "t*x3 - s*x4"),
            qrow("C3", "x1*x4 + x2*x3", "s*x1 + t*x3", "s*x2 - t*x4"),
            qrow("C4", "x1*x4 - x2*x3", "s*x1 + t*x3", "s*x2 + t*x4"),
            qrow("C5", "x1*x2 + x3*x4", "s*x1 + t*x4", "t*x2 - s*x3"),
            qrow("C6", "x1*x2 - x3*x4", "s*x1 + t*x4", "t*x2 + s*x3"),
            qrow("C7", "(x1^2 - x2^2) + (x3^2 - x4^2)", "s*(x1 - x2) + t*(x3 + x4)", "t*(x1 + x2) - s*(x3 - x4)"),
            qrow("C8", "(x1^2 - x2^2) - (x3^2 - x4^2)", "s*(x1 - x2) + t*(x3 - x4)", "t*(x1 + x2) + s*(x3 + x4)"),
            qrow("C9", "(x1^2 + x2^2) + (x3^2 + x4^2)", "s*(x1 + i*x2) + t*(x3 + i*x4)", "t*(x1 - i*x2) - s*(x3 - i*x4)"),
            qrow("C10", "(x1^2 + x2^2) - (x3^2 + x4^2)", "s*(x1 + i*x2) + t*(x3 - i*x4)", "t*(x1 - i*x2) + s*(x3 + i*x4)"),
        ],
        "T" => vec![
            qrow("C1", "x1*x3 - i*x2*x4", "s*x1 + t*x2", "t*x3 + i*s*x4"),
            qrow("C2", "x1*x3 + i*x2*x4", "s*x1 + t*x2", "t*x3 - i*s*x4"),
            qrow("C3", "x1*x4 + i*x2*x3", "s*x1 + t*x3", "s*x2 + i*t*x4"),
            qrow("C4", "x1*x4 - i*x2*x3", "s*x1 + t*x3", "s*x2 - i*t*x4"),
            qrow("C5", "x1*x2 + x3*x4", "s*x1 + t*x4", "t*x2 - s*x3"),
            qrow("C6", "x1*x2 - x3*x4", "s*x1 + t*x4", "t*x2 + s*x3"),
            qrow("C7", "(x1^2 + x2^2) + i*(x3^2 - x4^2)", "s*(x1 + i*x2) + t*(x3 - x4)", "t*(x1 - i*x2) - i*s*(x3 + x4)"),
            qrow("C8", "(x1^2 + x2^2) - i*(x3^2 - x4^2)", "s*(x1 + i*x2) + t*(x3 + x4)", "t*(x1 - i*x2) + i*s*(x3 - x4)"),
            qrow("C9", "(x1^2 - x2^2) + i*(x3^2 + x4^2)", "s*(x1 + x2) + t*(x3 - i*x4)", "t*(x1 - x2) - i*s*(x3 + i*x4)"),
            // the printed quadric repeats the previous row; this is the one its ruling sweeps out
            qrow("C10", "(x1^2 - x2^2) - i*(x3^2 + x4^2)", "s*(x1 + x2) + t*(x3 + i*x4)", "t*(x1 - x2) + i*s*(x3 - i*x4)"),
        ],
        _ => return Err(Error::UnknownKey(key.to_string())),
    })
}

impl QuadricRow {
    pub fn ruling(&self) -> Result<QuadricRuling> {
        QuadricRuling::from_ruling_one(self.quadric, self.ruling)
    }
}

pub type IntersectionRow = (&'static str, &'static str, [(&'static str, &'static str); 2]);

/// Nonempty pairwise intersections of the conic components, as joins of named points.
pub fn intersection_table(key: &str) -> Result<Vec<IntersectionRow>> {
    Ok(match key {
        "S" => vec![
            ("C1", "C2", [("e1", "e4"), ("e2", "e3")]),
            ("C1", "C7", [("p00", "p02"), ("p20", "p22")]),
            ("C1", "C9", [("p10", "p12"), ("p30", "p32")]),
            ("C2", "C8", [("p01", "p03"), ("p21", "p23")]),
            ("C2", "C10", [("p11", "p13"), ("p31", "p33")]),
            ("C3", "C4", [("e1", "e2"), ("e3", "e4")]),
            ("C3", "C7", [("p01", "p21"), ("p03", "p23")]),
            ("C3", "C10", [("p10", "p30"), ("p12", "p32")]),
            ("C4", "C8", [("p02", "p22"), ("p00", "p20")]),
            ("C4", "C9", [("p11", "p31"), ("p13", "p33")]),
            ("C5", "C6", [("e1", "e3"), ("e2", "e4")]),
            ("C5", "C7", [("p13", "p31"), ("p11", "p33")]),
            ("C5", "C8", [("p12", "p30"), ("p10", "p32")]),
            ("C6", "C9", [("p01", "p23"), ("p03", "p21")]),
            ("C6", "C10", [("p00", "p22"), ("p02", "p20")]),
        ],
        "T" => vec![
            ("C1", "C2", [("e1", "e4"), ("e2", "e3")]),
            ("C1", "C7", [("q31", "q33"), ("q11", "q13")]),
            ("C1", "C9", [("q01", "q03"), ("q21", "q23")]),
            ("C2", "C8", [("q10", "q12"), ("q30", "q32")]),
            ("C2", "C10", [("q20", "q22"), ("q00", "q02")]),
            ("C3", "C4", [("e1", "e2"), ("e3", "e4")]),
            ("C3", "C7", [("q12", "q32"), ("q10", "q30")]),
            ("C3", "C10", [("q01", "q21"), ("q03", "q23")]),
            ("C4", "C8", [("q13", "q33"), ("q11", "q31")]),
            ("C4", "C9", [("q00", "q20"), ("q02", "q22")]),
            ("C5", "C6", [("e1", "e3"), ("e2", "e4")]),
            ("C5", "C7", [("q02", "q20"), ("q00", "q22")]),
            // printed as l(q01,q13), which contains no second point of T
            ("C5", "C8", [("q03", "q21"), ("q01", "q23")]),
            ("C6", "C9", [("q10", "q32"), ("q12", "q30")]),
            ("C6", "C10", [("q13", "q31"), ("q11", "q33")]),
        ],
        _ => return Err(Error::UnknownKey(key.to_string())),
    })
}

pub fn named_points(key: &str) -> Result<Vec<(String, ProjPoint)>> {
    match key {
        "S" => Ok(geo::s_points()),
        "T" => Ok(geo::t_points()),
        _ => Err(Error::UnknownKey(key.to_string())),
    }
}

/// tau on the named points of S or T, by the closed formula.
pub fn tau_formula(key: &str, name: &str) -> Option<String> {
    match name {
        "e1" | "e2" => return Some(name.into()),
        "e3" => return Some("e4".into()),
        "e4" => return Some("e3".into()),
        _ => {}
    }
    let d: Vec<i64> = name[1..].chars().map(|c| c.to_digit(10).map(i64::from)).collect::<Option<_>>()?;
    let (j, k) = (d[0], d[1]);
    let shift = if key == "T" { 1 } else { 0 };
    Some(format!(
        "{}{}{}",
        &name[..1],
        (2 * k + shift - j).rem_euclid(4),
        (k - j).rem_euclid(4)
    ))
}

// ---------------------------------------------------------------------------
// claims

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub algebra: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub depth: u32,
    pub seed: u64,
    pub claims: Vec<ClaimResult>,
}

impl TraceReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.claims.iter().filter(|c| c.verdict == v).count()
    }
}

struct Runner {
    depth: u32,
    seed: u64,
    key: String,
    out: Vec<ClaimResult>,
}

impl Runner {
    fn claim(&mut self, id: &str, need: u32, expected: impl Into<String>, f: impl FnOnce() -> Result<(String, bool)>) {
        let mut r = ClaimResult {
            id: format!("{}.{}", self.key, id),
            algebra: self.key.clone(),
            expected: expected.into(),
            computed: String::new(),
            verdict: Verdict::Skipped,
            note: None,
        };
        if self.depth < need {
            r.note = Some(format!("needs depth {need}"));
        } else {
            match f() {
                Ok((computed, ok)) => {
                    r.computed = computed;
                    r.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
                }
                Err(e @ Error::BoundExceeded { .. }) => r.note = Some(e.to_string()),
                Err(e) => {
                    r.note = Some(e.to_string());
                    r.verdict = Verdict::Fail;
                }
            }
        }
        self.out.push(r);
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn polynomial_ring_hilbert(d: u32) -> Vec<u64> {
    (0..=d as u64).map(|k| binomial(k + 3, 3)).collect()
}

fn show<T: std::fmt::Debug>(v: T) -> String {
    format!("{v:?}")
}

/// Product of (1 - t^{d_i}) H(t) evaluated as a full polynomial, i.e. the
/// expected quotient Hilbert series when H = 1/(1-t)^4.
pub fn regular_quotient_series(degrees: &[u32]) -> Vec<i64> {
    let mut p = IntPolynomial::new(vec![1]);
    for &d in degrees {
        let mut f = vec![0i64; d as usize];
        f.iter_mut().for_each(|c| *c = 1);
        p = p.mul(&IntPolynomial::new(f));
    }
    p.0
}

fn claims_graded(r: &mut Runner, a: &NamedAlgebra, poincare: &[i64], cyclo: &[(usize, usize)]) {
    let Some(g) = a.grading.clone() else { return };
    let p = a.presentation.clone();
    r.claim("poincare", 0, format!("{poincare:?} = {cyclo:?}"), || {
        let ga = g.assignment()?;
        let (poly, fac) = poincare_report(&ga)?;
        let ok = poly.0 == poincare && fac.as_deref() == Some(cyclo) && poly.eval(1) == ga.group.order() as i64;
        Ok((format!("{:?} = {:?}", poly.0, fac), ok))
    });
    let need = poincare.len() as u32;
    r.claim("covariant_hilbert", need, show(poincare), || {
        let ga = g.assignment()?;
        let gb = complete(&p, need);
        let rep = covariant_hilbert_check(&gb, &ga, &ga.grades, need)?;
        Ok((show(&rep.hilbert), rep.matches))
    });
}

fn claims_identity(r: &mut Runner, a: &NamedAlgebra, pattern: Option<&[(usize, usize, Commutation)]>) {
    let Some(g) = a.grading.clone() else { return };
    let p = a.presentation.clone();
    let gens = a.identity_generators.clone();
    r.claim("identity_generators", 6, show(&gens), || {
        let ga = g.assignment()?;
        let gb = complete(&p, 6);
        let rep = identity_component_report(&gb, &ga, 6)?;
        let ok = match pattern {
            None => rep.all_commute(),
            Some(pat) => pat.iter().all(|&(i, j, c)| rep.relation(i, j) == Some(c)),
        };
        Ok((format!("{:?} {:?}", rep.generators, rep.commutation), ok && rep.generators == gens))
    });
    if pattern.is_none() {
        r.claim("free_module_rank", 6, "[1, 4, 6, 4, 1] rank 16", || {
            let gb = complete(&p, 6);
            let ys: Vec<NCPoly> = gens.iter().map(|s| p.parse_poly(s)).collect::<Result<_>>()?;
            let cert = free_module_certificate(&gb, &ys, 6)?;
            Ok((format!("{:?} rank {}", cert.quotient_hilbert, cert.rank), cert.certified && cert.rank == 16))
        });
    }
}

fn claims_hilbert(r: &mut Runner, p: &Presentation) {
    let d = r.depth.min(8);
    r.claim("hilbert", 2, show(polynomial_ring_hilbert(d)), || {
        let h = complete(p, d).hilbert_function(d)?.values;
        Ok((show(&h), h == polynomial_ring_hilbert(d)))
    });
}

fn claims_central_sequence(r: &mut Runner, a: &NamedAlgebra, degrees: &[u32], total: u64) {
    let top: u32 = degrees.iter().sum::<u32>() - 4;
    let need = top + 1;
    let p = a.presentation.clone();
    let seq = a.central_sequence.clone();
    let expect = regular_quotient_series(degrees);
    r.claim("central_regular_sequence", need, format!("{expect:?} total {total}"), || {
        let elems: Vec<NCPoly> = seq.iter().map(|s| p.parse_poly(s)).collect::<Result<_>>()?;
        let rep = regular_sequence_check(&p, &elems, need)?;
        let q: Vec<i64> = rep.quotient.values.iter().map(|&v| v as i64).collect();
        let mut e = expect.clone();
        e.resize(q.len(), 0);
        let ok = rep.regular && q == e && rep.total_dimension == Some(total);
        Ok((format!("{:?} central {:?} total {:?}", q, rep.central, rep.total_dimension), ok))
    });
}

fn pairing_ints(m: &Matrix) -> Vec<Vec<i64>> {
    m.data
        .iter()
        .map(|r| r.iter().map(|c| c.as_rational().and_then(|q| q.to_i64()).unwrap_or(i64::MIN)).collect())
        .collect()
}

fn claims_s_algebraic(r: &mut Runner, a: &NamedAlgebra) {
    let p = a.presentation.clone();
    let gbl = a.groebner_basis.clone();
    r.claim("groebner_basis", 6, show(&gbl), || {
        let gb = complete(&p, 6);
        let mut got: BTreeSet<String> = BTreeSet::new();
        for e in gb.elements() {
            got.insert(p.poly_text(&e.monic(&p.order)));
        }
        let mut want = BTreeSet::new();
        for s in &gbl {
            want.insert(p.poly_text(&p.parse_poly(s)?.monic(&p.order)));
        }
        Ok((show(&got), got == want))
    });
    r.claim("dual_frobenius_pairings", 6, "I6; (1,3) and (3,1) signed permutations", || {
        let d = load_builtin("S_dual")?.presentation;
        if !relation_span_equal(&d, &quadratic_dual(&p)?) {
            return Ok(("stored dual differs from the computed dual".into(), false));
        }
        let rep = frobenius_check(&d, 4, 6)?;
        let gb = complete(&d, 6);
        let ws = |list: &[&str]| -> Result<Vec<crate::presentations::Word>> {
            list.iter()
                .map(|s| Ok(d.parse_poly(s)?.terms.into_keys().next().expect("monomial")))
                .collect()
        };
        let top = ws(&["a4^4"])?.remove(0);
        let b1 = ws(&["a1", "a2", "a3", "a4"])?;
        let b2 = ws(&["a2*a4", "a4*a1", "a2*a3", "a4*a2", "a3^2", "a4^2"])?;
        let b3 = ws(&["a4^3", "a2*a4*a1", "a4^2*a2", "a4*a2*a4"])?;
        let m22 = crate::quadraticdual::pairing_matrix(&gb, &b2, &b2, &top)?;
        let m13 = pairing_ints(&crate::quadraticdual::pairing_matrix(&gb, &b1, &b3, &top)?);
        let m31 = pairing_ints(&crate::quadraticdual::pairing_matrix(&gb, &b3, &b1, &top)?);
        let ok = rep.nondegenerate
            && rep.hilbert[..5] == [1, 4, 6, 4, 1]
            && m22 == Matrix::identity(6)
            && m13 == [[0, 0, -1, 0], [0, 0, 0, 1], [0, -1, 0, 0], [1, 0, 0, 0]]
            && m31 == [[0, 0, 0, 1], [0, 0, -1, 0], [-1, 0, 0, 0], [0, 1, 0, 0]];
        Ok((format!("hilbert {:?} (1,3) {:?} (3,1) {:?}", rep.hilbert, m13, m31), ok))
    });
    let mats = a.clone();
    let d = r.depth.min(8);
    r.claim("koszul_complex_exact", 4, "complex, exact", || {
        let rep = koszul_complex_check(&p, &mats.koszul()?, d)?;
        Ok((format!("complex {} exact {} {:?}", rep.is_complex, rep.exact, rep.failure), rep.is_complex && rep.exact))
    });
    let z = "x1^2 + x2^2 + x3*x4 + x4*x3";
    r.claim("central_quadratic", 4, z, || {
        let gb = complete(&p, 4);
        let c = gb.central_elements(2)?;
        let want = p.parse_poly(z)?.monic(&p.order);
        let sq = p.parse_poly("(x1 - x2 - x3 - x4)^2")?;
        let ok = c.len() == 1 && c[0] == want && gb.normal_form(&sq)? == gb.normal_form(&want)?;
        Ok((c.iter().map(|f| p.poly_text(f)).collect::<Vec<_>>().join(", "), ok))
    });
    r.claim("hypersurface_dual", 6, "dual of S/(z) modulo a1^2 is the dual of S", || {
        let zz = p.parse_poly(z)?;
        let w = crate::presentations::parse_poly_in("a1^2", &["a1", "a2", "a3", "a4"].map(String::from))?;
        let rep = crate::quadraticdual::hypersurface_dual_check(&p, &zz, &w, 6)?;
        Ok((format!("{:?}", rep.quotient_hilbert), rep.holds))
    });
    r.claim("left_regular_x3_x4", 6, "true", || {
        let gb = complete(&p, 6);
        let ok = gb.left_regular_check(&NCPoly::var(2), 5)? && gb.left_regular_check(&NCPoly::var(3), 5)?;
        Ok((ok.to_string(), ok))
    });
    r.claim("not_a_domain_modulo_z", 4, "x1 - x2 - x3 - x4 is a left zero divisor", || {
        let q = load_builtin("S_mod_z")?.presentation;
        let gb = complete(&q, 4);
        let y = q.parse_poly("x1 - x2 - x3 - x4")?;
        let reg = gb.left_regular_check(&y, 3)?;
        Ok((format!("left regular: {reg}"), !reg))
    });
}

fn koszul_identity(p: &Presentation, d: u32) -> Result<(String, bool)> {
    let h = complete(p, d).hilbert_function(d)?.values;
    let hd = complete(&quadratic_dual(p)?, d).hilbert_function(d)?.values;
    let mut out = Vec::new();
    for n in 0..=d as usize {
        let s: i64 = (0..=n)
            .map(|k| {
                let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
                h[k] as i64 * hd[n - k] as i64 * sign
            })
            .sum();
        out.push(s);
    }
    let ok = out.iter().enumerate().all(|(n, &s)| s == i64::from(n == 0));
    Ok((show(out), ok))
}

fn claims_point_scheme_st(r: &mut Runner, a: &NamedAlgebra) {
    let key = a.key.clone();
    let pp = a.point_presentation();
    r.claim("point_scheme", 0, "dim 0, degree 20; the 20 named points with tau by formula", || {
        let m = relation_matrix(&pp?)?;
        let ideal = point_scheme_ideal(&m)?;
        let h = ideal.hilbert_data(8)?;
        let pts = named_points(&key)?;
        let mut ok = h.projective_dimension == Some(0) && h.degree == 20;
        let distinct: BTreeSet<String> = pts.iter().map(|(_, p)| p.to_string()).collect();
        ok &= distinct.len() == 20;
        for (name, p) in &pts {
            let t = verify_point_and_tau(p, &m)?;
            let want = tau_formula(&key, name).and_then(|n| pts.iter().find(|(k, _)| *k == n).map(|x| x.1.clone()));
            ok &= t.is_point && t.rank == 3 && t.tau.is_some() && t.tau == want;
        }
        Ok((format!("dim {:?} degree {}", h.projective_dimension, h.degree), ok))
    });
    let want: Vec<usize> = if key == "S" { vec![1, 1, 1, 1, 2, 2, 4, 4, 4] } else { vec![1, 1, 2, 4, 4, 4, 4] };
    let pp = a.point_presentation();
    let key2 = key.clone();
    r.claim("tau_orbits", 0, show(&want), || {
        let m = relation_matrix(&pp?)?;
        let orbits = geo::tau_orbits(&named_points(&key2)?, &m)?;
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort();
        let mut ok = sizes == want;
        if key2 == "S" {
            // the two fixed p-points and the swapped pair
            let fixed: Vec<&Vec<String>> = orbits.iter().filter(|o| o.len() == 1 && o[0].starts_with('p')).collect();
            let f: BTreeSet<String> = fixed.iter().map(|o| named_points("S").unwrap().iter().find(|x| x.0 == o[0]).unwrap().1.to_string()).collect();
            let expect: BTreeSet<String> = [[1, 1, 1, 1], [1, 1, -1, -1]]
                .iter()
                .map(|c| ProjPoint::from_ints(c).unwrap().to_string())
                .collect();
            ok &= f == expect;
        }
        Ok((show(&sizes), ok))
    });
}

fn claims_line_scheme_st(r: &mut Runner, a: &NamedAlgebra) {
    let key = a.key.clone();
    let alpha = if key == "S" { "1" } else { "i" };
    let p = a.presentation.clone();
    let comps = conic_components(alpha);
    let (comps, err) = match comps {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e)),
    };
    if let Some(e) = err {
        r.claim("line_scheme", 0, "", || Err(e));
        return;
    }
    let ideal = line_scheme_ideal(&p);
    let ideal = match ideal {
        Ok(i) => i,
        Err(e) => {
            r.claim("line_scheme", 0, "", || Err(e));
            return;
        }
    };
    r.claim("line_scheme", 0, "dim 1, degree 20; ten conics inside", || {
        let h = ideal.hilbert_data(10)?;
        let inside = comps.iter().all(|c| c.lies_in(&ideal));
        Ok((
            format!("dim {:?} degree {} conics inside: {inside}", h.projective_dimension, h.degree),
            h.projective_dimension == Some(1) && h.degree == 20 && inside,
        ))
    });
    let rows = quadric_table(&key);
    r.claim("quadrics_and_rulings", 0, "all ten rows", || {
        let rows = rows?;
        let mut failed = Vec::new();
        for row in &rows {
            let c = comps.iter().find(|c| c.label == row.component).expect("component");
            let qr = row.ruling()?;
            let rep = quadric_ruling_check(&qr, c)?;
            let par = Parametrization {
                params: vec!["s".into(), "t".into()],
                coords: ruling_pluecker(&qr.ruling_one),
            };
            let with = c.clone().with_parametrization(par);
            let in_scheme = component_parametrization_check(&with, &ideal)? && component_parametrization_check(&with, &c.ideal)?;
            if !rep.ok() || !in_scheme {
                failed.push(row.component);
            }
        }
        Ok((format!("failed: {failed:?}"), failed.is_empty()))
    });
    let table = intersection_table(&key);
    let named = named_points(&key);
    r.claim("component_intersections", 0, "the listed pairs; others empty", || {
        let table = table?;
        let named = named?;
        let got = component_intersections(&comps)?;
        let mut diffs = Vec::new();
        for e in &got {
            let labels: BTreeSet<String> = e.lines.iter().map(|m| line_label(m, &named)).collect();
            let row = table.iter().find(|t| t.0 == e.first && t.1 == e.second);
            let want: BTreeSet<String> = row
                .map(|t| t.2.iter().map(|(u, v)| format!("l({u},{v})")).collect())
                .unwrap_or_default();
            if labels != want || e.positive_dimensional || !e.complete {
                diffs.push(format!("{}∩{}: {:?}", e.first, e.second, labels));
            }
        }
        for t in &table {
            if !got.iter().any(|e| e.first == t.0 && e.second == t.1) {
                diffs.push(format!("{}∩{}: empty", t.0, t.1));
            }
        }
        Ok((format!("{} nonempty pairs; differences {diffs:?}", got.len()), diffs.is_empty()))
    });
    let named = named_points(&key);
    r.claim("incidence", 0, "30 lines; 3 per point; 2 components and 2 points per line", || {
        let named = named?;
        let lines = incidence_lines(&named, &comps)?;
        let mut ok = lines.len() == 30;
        ok &= lines.iter().all(|l| l.components.len() == 2 && l.points.len() == 2);
        for (n, _) in &named {
            ok &= lines.iter().filter(|l| l.points.contains(n)).count() == 3;
        }
        Ok((format!("{} lines", lines.len()), ok))
    });
}

fn cpoly_list(list: &[&str], names: &[String]) -> Result<Vec<CPoly>> {
    list.iter().map(|s| CPoly::parse(s, names)).collect()
}

fn claims_r_geometry(r: &mut Runner, a: &NamedAlgebra) {
    let p = a.presentation.clone();
    r.claim("point_scheme_lines", 0, "minors vanish on the six E lines; tau as stated", || {
        let m = relation_matrix(&p)?;
        let ideal = point_scheme_ideal(&m)?;
        let ab: Vec<String> = vec!["a".into(), "b".into()];
        let mut ok = true;
        for (_, par, img) in r_tau_table() {
            let pc = cpoly_list(&par, &ab)?;
            ok &= ideal.gens.iter().all(|g| g.substitute(&pc).is_zero());
            // M(param) * image = 0 identically
            let ic = cpoly_list(&img, &ab)?;
            for row in &m.entries {
                let mut acc = CPoly::zero(2);
                for (e, t) in row.iter().zip(&ic) {
                    acc = acc.add(&e.substitute(&pc).mul(t));
                }
                ok &= acc.is_zero();
            }
        }
        let h = ideal.hilbert_data(8)?;
        ok &= h.projective_dimension == Some(1) && h.degree == 6;
        Ok((format!("dim {:?} degree {}", h.projective_dimension, h.degree), ok))
    });
    let comps = r_line_components();
    let p2 = a.presentation.clone();
    r.claim("line_scheme_components", 0, "dim 2, degree 10; C1..C7 inside; preimages", || {
        let comps = comps?;
        let ideal = line_scheme_ideal(&p2)?;
        let h = ideal.hilbert_data(10)?;
        let mut ok = h.projective_dimension == Some(2) && h.degree == 10;
        for c in &comps {
            ok &= c.lies_in(&ideal);
            ok &= component_parametrization_check(c, &c.ideal)?;
        }
        // joins: the two displayed conditions and the join determinant
        let names: Vec<String> = ["a", "b", "c", "d", "e", "f", "g", "h"].iter().map(|s| s.to_string()).collect();
        let conds = CIdeal::new(names.clone(), cpoly_list(&["a*h - b*g + c*f - d*e", "a*g - b*h - c*e + d*f"], &names)?)?;
        let det = CPoly::parse("(a + b)*(g - h) - (e + f)*(c - d)", &names)?;
        ok &= conds.contains(&det);
        Ok((format!("dim {:?} degree {}", h.projective_dimension, h.degree), ok))
    });
    let seed = r.seed;
    r.claim("incidence_samples", 0, "3 or 6 families through points; 2 or 3 points on lines", || {
        let comps = r_line_components()?;
        let lines = r_point_lines();
        let specials = r_special_points();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ok = true;
        let mut log = Vec::new();
        for _ in 0..3 {
            // a point on each E line, away from p1..p4
            for (name, _, _) in r_tau_table() {
                let (s, t) = loop {
                    let s: i64 = rng.gen_range(1..20);
                    let t: i64 = rng.gen_range(1..20);
                    if s != t {
                        break (s, t);
                    }
                };
                let par = r_tau_table().into_iter().find(|x| x.0 == name).unwrap().1;
                let ab: Vec<String> = vec!["a".into(), "b".into()];
                let coords: Vec<FieldValue> = cpoly_list(&par, &ab)?
                    .iter()
                    .map(|c| c.eval(&[FieldValue::from_int(s), FieldValue::from_int(t)]))
                    .collect();
                let pt = ProjPoint::new(coords)?;
                let fam = lines_through_point(&pt, &comps)?;
                let n = fam.iter().filter(|f| f.family_dimension == 1).count();
                ok &= n == 3 && fam.iter().all(|f| f.family_dimension <= 1);
                log.push(n);
            }
            // a line in H1 through none of p2, p3, p4
            let line = loop {
                let v: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..10)).collect();
                let f = [1, -1, 0, 0].map(FieldValue::from_int);
                let g = v.iter().map(|&k| FieldValue::from_int(k)).collect::<Vec<_>>();
                if let Ok(l) = LineInP3::cut_out_by(&f, &g) {
                    if specials[1..].iter().all(|(_, p)| !l.contains(p)) {
                        break l;
                    }
                }
            };
            match points_on_line_in_lines(&line, &lines) {
                LineMeets::Points(pts) => {
                    ok &= pts.len() == 3 && pts.iter().all(|q| specials.iter().all(|(_, p)| p != q));
                    log.push(pts.len());
                }
                LineMeets::Contained(_) => ok = false,
            }
        }
        for _ in 0..3 {
            // a line in H1 through p2: two points, one of them p2
            let q = loop {
                let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-9..10)).collect();
                if let Ok(q) = ProjPoint::from_ints(&[v[0], v[0], v[1], v[2]]) {
                    if v[1] != 0 && v[2] != 0 && v[1] != v[2] && v[1] != -v[2] {
                        break q;
                    }
                }
            };
            let l = LineInP3::through(&specials[1].1, &q)?;
            match points_on_line_in_lines(&l, &lines) {
                LineMeets::Points(pts) => {
                    ok &= pts.len() == 2 && pts.contains(&specials[1].1);
                    log.push(pts.len());
                }
                LineMeets::Contained(_) => ok = false,
            }
            // a join of E23 and E14 lies in no H_i and meets the point scheme twice
            let (a, b, c, d) = loop {
                let v: Vec<i64> = (0..4).map(|_| rng.gen_range(1..10)).collect();
                if v[0] != v[1] && v[2] != v[3] {
                    break (v[0], v[1], v[2], v[3]);
                }
            };
            let l = LineInP3::through(&ProjPoint::from_ints(&[a, -a, b, b])?, &ProjPoint::from_ints(&[c, c, d, -d])?)?;
            match points_on_line_in_lines(&l, &lines) {
                LineMeets::Points(pts) => {
                    ok &= pts.len() == 2;
                    log.push(pts.len());
                }
                LineMeets::Contained(_) => ok = false,
            }
        }
        for (_, p) in &specials {
            let fam = lines_through_point(p, &comps)?;
            ok &= fam.iter().filter(|f| f.family_dimension == 1).count() == 6;
        }
        // E14 itself is a component of the point scheme
        let e14 = lines.iter().find(|l| l.0 == "E14").unwrap().1.clone();
        ok &= matches!(points_on_line_in_lines(&e14, &lines), LineMeets::Contained(_));
        Ok((format!("{log:?}"), ok))
    });
}

fn claims_r_prime(r: &mut Runner, a: &NamedAlgebra) {
    let p = a.presentation.clone();
    r.claim("point_scheme_line_and_planes", 0, "V(x2,x4) and V(x1 ± i x3)", || {
        let m = relation_matrix(&p)?;
        let ideal = point_scheme_ideal(&m)?;
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let mut ok = true;
        for par in [["a", "0", "b", "0"], ["i*b", "a", "b", "c"], ["-i*b", "a", "b", "c"]] {
            let pc = cpoly_list(&par, &names)?;
            ok &= ideal.gens.iter().all(|g| g.substitute(&pc).is_zero());
        }
        Ok((ok.to_string(), ok))
    });
}

fn run_key(r: &mut Runner, key: &str) -> Result<()> {
    let a = load_builtin(key)?;
    r.key = key.into();
    match key {
        "R_original" => {
            claims_hilbert(r, &a.presentation);
            claims_identity(r, &a, None);
            claims_graded(r, &a, &[1, 4, 6, 4, 1], &[(2, 4)]);
            let sub = a.substitution.clone().expect("substitution");
            let p = a.presentation.clone();
            r.claim("change_of_variables", 0, "span equal to R_YZ", || {
                let rows: Vec<&[i64]> = sub.matrix.iter().map(|r| r.as_slice()).collect();
                let m = Matrix::from_ints(&rows);
                let q = apply_linear_substitution(&p, &m)?;
                let target = load_builtin(&sub.target)?.presentation;
                let ok = relation_span_equal(&q, &target);
                Ok((ok.to_string(), ok))
            });
        }
        "R_YZ" => {
            claims_hilbert(r, &a.presentation);
            claims_central_sequence(r, &a, &[2, 2, 4, 4], 64);
            claims_r_geometry(r, &a);
        }
        "S" | "T" => {
            claims_hilbert(r, &a.presentation);
            if key == "S" {
                claims_s_algebraic(r, &a);
                claims_identity(r, &a, None);
            } else {
                let p = a.presentation.clone();
                r.claim("dual_frobenius", 6, "nondegenerate", || {
                    let rep = frobenius_check(&quadratic_dual(&p)?, 4, 6)?;
                    Ok((format!("{:?}", rep.hilbert), rep.nondegenerate))
                });
                let p = a.presentation.clone();
                r.claim("no_normal_quadratics", 4, "none central, none normal", || {
                    let rep = complete(&p, 4).normal_elements_deg2()?;
                    Ok((format!("empty {}", rep.empty), rep.empty && rep.central.is_empty()))
                });
                use Commutation::*;
                let pat = [
                    (0, 1, Anticommute),
                    (0, 2, Anticommute),
                    (1, 3, Anticommute),
                    (2, 3, Anticommute),
                    (0, 3, Commute),
                    (1, 2, Commute),
                ];
                claims_identity(r, &a, Some(&pat));
            }
            let p = a.presentation.clone();
            let d = r.depth.min(8);
            r.claim("numerical_koszul", 4, "H(t) H^!(-t) = 1", || koszul_identity(&p, d));
            claims_graded(r, &a, &[1, 4, 6, 4, 1], &[(2, 4)]);
            if key == "S" {
                claims_central_sequence(r, &a, &[2, 4, 4, 4], 128);
            } else {
                claims_central_sequence(r, &a, &[4, 4, 8, 8], 1024);
            }
            claims_point_scheme_st(r, &a);
            claims_line_scheme_st(r, &a);
        }
        "R_prime" => claims_r_prime(r, &a),
        "craw_m2" => {
            claims_graded(r, &a, &[1, 2, 3, 4, 3, 2, 1], &[(2, 2), (4, 2)]);
            let g = a.grading.clone().expect("grading");
            let p = a.presentation.clone();
            r.claim("fixed_ring_series", 8, "1/(1-t^4)^2", || {
                let ga = g.assignment()?;
                let rep = identity_component_report(&complete(&p, 8), &ga, 8)?;
                let want = [1u64, 0, 0, 0, 2, 0, 0, 0, 3];
                Ok((show(&rep.hilbert), rep.hilbert == want))
            });
        }
        "example_2_5_D8" => claims_graded(r, &a, &[1, 3, 3, 1], &[(2, 3)]),
        _ => {}
    }
    Ok(())
}

/// Run every stored claim for the given keys. Claims needing more than `depth`
/// are reported as skipped; failures are collected, not fatal.
pub fn verify_claims(keys: &[&str], depth: u32, seed: u64) -> Result<TraceReport> {
    for k in keys {
        if source(k).is_none() {
            return Err(Error::UnknownKey(k.to_string()));
        }
    }
    let mut r = Runner {
        depth,
        seed,
        key: String::new(),
        out: Vec::new(),
    };
    for k in keys {
        run_key(&mut r, k)?;
    }
    Ok(TraceReport {
        depth,
        seed,
        claims: r.out,
    })
}

pub const DEFAULT_SEED: u64 = 16;
