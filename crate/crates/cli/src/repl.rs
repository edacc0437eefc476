//! Menu-driven session: enter knots by hand, take connected sums, inspect
//! complexes and compute d-invariants.

use std::io::{self, BufRead, Write};
use std::time::Instant;

use dtower_core::complex::ViolationKind;
use dtower_core::{compute_d, y_slice, DConfig, GenId, Generator, KnotComplex};

use crate::listing;

const RULE_TOP: &str = "---------------------------------";
const RULE_BOTTOM: &str = "----------------------------------";

const MAIN_MENU: &str = "   Main menu.
(1) Enter a new knot
(2) View current knots
(3) Select a knot
(4) Connect-sum two knots
(0) Quit";

const KNOT_MENU: &str = "What would you like to do with your knot complex?
(1) Print its adjacency list
(2) Show its bifiltration levels
(3) Check if it defines a complex
(4) Check if it is filtered
(5) Compute its homology
(6) Compute d invariants!
(7) Nothing--bring me back to the main menu";

pub struct Session<R, W> {
    input: R,
    out: W,
    knots: Vec<KnotComplex>,
    cfg: DConfig,
}

// `None` means the input ended.
type Step<T> = io::Result<Option<T>>;

impl<R: BufRead, W: Write> Session<R, W> {
    pub fn new(input: R, out: W, cfg: DConfig) -> Self {
        Self { input, out, knots: Vec::new(), cfg }
    }

    #[cfg(test)]
    pub fn knots(&self) -> &[KnotComplex] {
        &self.knots
    }

    fn line(&mut self) -> Step<String> {
        self.out.flush()?;
        let mut buf = String::new();
        if self.input.read_line(&mut buf)? == 0 {
            return Ok(None);
        }
        Ok(Some(buf.trim().to_string()))
    }

    fn integer(&mut self) -> Step<i64> {
        loop {
            let Some(text) = self.line()? else { return Ok(None) };
            match text.parse() {
                Ok(v) => return Ok(Some(v)),
                Err(_) => writeln!(self.out, "please enter an integer")?,
            }
        }
    }

    pub fn run(&mut self) -> io::Result<()> {
        writeln!(self.out, "d calculator: correction terms of +1 and -1 surgery, coefficients Z/2")?;
        loop {
            writeln!(self.out, "{RULE_TOP}\n{MAIN_MENU}\n{RULE_BOTTOM}")?;
            let Some(choice) = self.line()? else { return Ok(()) };
            let done = match choice.as_str() {
                "1" => self.enter_knot()?,
                "2" => self.list_knots().map(|_| Some(()))?,
                "3" => self.select_knot()?,
                "4" => self.connect_sum()?,
                "0" => {
                    write!(self.out, "Really quit d calculator? (y/n) ")?;
                    match self.line()? {
                        None => return Ok(()),
                        Some(a) if a.eq_ignore_ascii_case("y") => return Ok(()),
                        Some(_) => Some(()),
                    }
                }
                _ => {
                    writeln!(self.out, "Please choose 0, 1, 2, 3 or 4.")?;
                    Some(())
                }
            };
            if done.is_none() {
                return Ok(());
            }
        }
    }

    fn list_knots(&mut self) -> io::Result<()> {
        if self.knots.is_empty() {
            return writeln!(self.out, "No knots entered yet.");
        }
        writeln!(self.out, "Current knots are:\n(index, name)\n------------")?;
        for (k, c) in self.knots.iter().enumerate() {
            writeln!(self.out, "({k}, {})", c.name())?;
        }
        Ok(())
    }

    fn knot_index(&mut self) -> Step<usize> {
        loop {
            let Some(v) = self.integer()? else { return Ok(None) };
            match usize::try_from(v) {
                Ok(k) if k < self.knots.len() => return Ok(Some(k)),
                _ => writeln!(self.out, "no knot with index {v}")?,
            }
        }
    }

    fn enter_knot(&mut self) -> Step<()> {
        writeln!(self.out, "Enter the name of your knot")?;
        let Some(name) = self.line()? else { return Ok(None) };

        writeln!(self.out, "Enter the knot vertex keys (non-neg integers).  input -1 to stop")?;
        let mut keys: Vec<i64> = Vec::new();
        loop {
            let Some(v) = self.integer()? else { return Ok(None) };
            match v {
                -1 => break,
                v if v < 0 => writeln!(self.out, "keys must be non-negative")?,
                v if keys.contains(&v) => writeln!(self.out, "key {v} already entered")?,
                v => keys.push(v),
            }
        }
        let listed: String = keys.iter().map(|k| format!("{k},")).collect();
        writeln!(self.out, "entered vertices {listed}")?;

        writeln!(
            self.out,
            "enter the adjacency lists (type a vertex key, press enter,\n\tcontinue. input -1 to stop)"
        )?;
        let mut arrows = Vec::new();
        for &k in &keys {
            writeln!(self.out, "successors of {k}:")?;
            let mut succ: Vec<i64> = Vec::new();
            loop {
                let Some(v) = self.integer()? else { return Ok(None) };
                match v {
                    -1 => break,
                    v if !keys.contains(&v) => writeln!(self.out, "no vertex with key {v}")?,
                    v if succ.contains(&v) => writeln!(self.out, "{v} is already a successor")?,
                    v => succ.push(v),
                }
            }
            arrows.extend(succ.into_iter().map(|t| (GenId::atom(k.to_string()), GenId::atom(t.to_string()))));
        }

        writeln!(
            self.out,
            "enter the bifiltration levels\n(type i value, press enter, then type j value, then press enter)"
        )?;
        let mut generators = Vec::new();
        for &k in &keys {
            write!(self.out, "\nF_i[{k}] = ")?;
            let Some(i) = self.integer()? else { return Ok(None) };
            write!(self.out, "F_j[{k}] = ")?;
            let Some(j) = self.integer()? else { return Ok(None) };
            generators.push(Generator::new(k.to_string(), i, j));
        }

        match KnotComplex::new(name.clone(), generators, arrows) {
            Ok(c) => {
                writeln!(self.out, "added knot {name} with adjacency list")?;
                write!(self.out, "{}", listing::adjacency(&c))?;
                writeln!(self.out, "and bifiltration levels")?;
                write!(self.out, "{}", listing::bifiltrations(&c))?;
                writeln!(self.out, "\n\n")?;
                self.knots.push(c);
            }
            Err(e) => writeln!(self.out, "could not add knot: {e}")?,
        }
        Ok(Some(()))
    }

    fn connect_sum(&mut self) -> Step<()> {
        self.list_knots()?;
        if self.knots.is_empty() {
            return Ok(Some(()));
        }
        writeln!(self.out, "Enter the indices of the two knots to add")?;
        let Some(a) = self.knot_index()? else { return Ok(None) };
        let Some(b) = self.knot_index()? else { return Ok(None) };
        writeln!(self.out, "Computing tensor product...")?;
        let start = Instant::now();
        let sum = self.knots[a].tensor_product(&self.knots[b]);
        let secs = start.elapsed().as_secs();
        writeln!(self.out, "Computation took {}min{}sec.", secs / 60, secs % 60)?;
        match sum {
            Ok(c) => {
                writeln!(self.out, "Created knot {} having adjacency list", c.name())?;
                write!(self.out, "{}", listing::adjacency(&c))?;
                writeln!(self.out, "and bifiltrations")?;
                write!(self.out, "{}", listing::bifiltrations(&c))?;
                self.knots.push(c);
            }
            Err(e) => writeln!(self.out, "could not form the connected sum: {e}")?,
        }
        Ok(Some(()))
    }

    fn select_knot(&mut self) -> Step<()> {
        self.list_knots()?;
        if self.knots.is_empty() {
            return Ok(Some(()));
        }
        writeln!(self.out, "input an index")?;
        let Some(k) = self.knot_index()? else { return Ok(None) };
        loop {
            writeln!(self.out, "{KNOT_MENU}")?;
            let Some(choice) = self.line()? else { return Ok(None) };
            let c = self.knots[k].clone();
            match choice.as_str() {
                "1" => write!(self.out, "{}", listing::adjacency(&c))?,
                "2" => write!(self.out, "{}", listing::bifiltrations(&c))?,
                "3" => self.report(&c, ViolationKind::BoundarySquared, "defines a complex")?,
                "4" => self.report(&c, ViolationKind::FiltrationIncrease, "is filtered")?,
                "5" => match y_slice(&c) {
                    Ok(s) => writeln!(self.out, "homology of the y-slice over Z/2 has rank {}", s.homology_rank())?,
                    Err(e) => writeln!(self.out, "cannot compute homology: {e}")?,
                },
                "6" => match compute_d(&c, &self.cfg) {
                    Ok(r) => write!(self.out, "{}", listing::d_lines(r.d_plus, r.d_minus))?,
                    Err(e) => writeln!(self.out, "cannot compute d invariants: {e}")?,
                },
                "7" => {}
                _ => {
                    writeln!(self.out, "Please choose a number from 1 to 7.")?;
                    continue;
                }
            }
            return Ok(Some(()));
        }
    }

    fn report(&mut self, c: &KnotComplex, kind: ViolationKind, what: &str) -> io::Result<()> {
        let report = c.validate();
        let bad: Vec<String> = report.violations.iter().filter(|v| v.kind == kind).map(ToString::to_string).collect();
        if bad.is_empty() {
            writeln!(self.out, "yes, it {what}")
        } else {
            writeln!(self.out, "no, it is not true that it {what}:")?;
            bad.iter().try_for_each(|v| writeln!(self.out, "  {v}"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(script: &str) -> (String, Vec<KnotComplex>) {
        let mut out = Vec::new();
        let mut s = Session::new(script.as_bytes(), &mut out, DConfig::default());
        s.run().unwrap();
        let knots = s.knots().to_vec();
        (String::from_utf8(out).unwrap(), knots)
    }

    const TREFOIL: &str = "1\ntrefoil\n0\n1\n2\n-1\n1\n2\n-1\n-1\n-1\n1\n1\n0\n1\n1\n0\n";

    #[test]
    fn enter_trefoil() {
        let (out, knots) = run(&format!("{TREFOIL}0\ny\n"));
        assert!(out.contains("entered vertices 0,1,2,\n"));
        assert!(out.contains("added knot trefoil with adjacency list\n[0]1,2,\n[1]\n[2]\nand bifiltration levels\n"));
        assert!(out.contains("F(0) = (1,1)\nF(1) = (0,1)\nF(2) = (1,0)\n"));
        assert!(out.ends_with("Really quit d calculator? (y/n) "));
        assert_eq!(knots.len(), 1);
    }

    #[test]
    fn bad_input_reprompts() {
        let (out, _) = run("9\nx\n2\n0\nn\n0\ny\n");
        assert!(out.contains("Please choose 0, 1, 2, 3 or 4."));
        assert!(out.contains("No knots entered yet."));
        assert_eq!(out.matches("Really quit").count(), 2);
        assert_eq!(out.matches("Main menu.").count(), 5);
    }

    #[test]
    fn knot_actions() {
        let (out, _) = run(&format!("{TREFOIL}3\n0\n5\n3\n0\n3\n3\n0\n9\n4\n3\n0\n6\n0\ny\n"));
        assert!(out.contains("homology of the y-slice over Z/2 has rank 1"));
        assert!(out.contains("yes, it defines a complex"));
        assert!(out.contains("Please choose a number from 1 to 7."));
        assert!(out.contains("yes, it is filtered"));
        assert!(out.contains("d(S^3_{+1}(K)) = -2\nd(S^3_{-1}(K)) = 0\n"));
    }

    #[test]
    fn eof_ends_session() {
        let (out, _) = run("1\nhalf");
        assert!(out.contains("Enter the knot vertex keys"));
    }
}
