//! Graphviz output. Forward wires run left to right; backward wires are
//! drawn dashed with the arrow pointing back.

use std::fmt::Write;

use opengame::finite::Base;
use opengame::Ty;

use crate::check::{Typed, TypedKind};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Fwd,
    Bwd,
}

struct Wire {
    parent: usize,
    label: String,
    dir: Dir,
    producer: Option<String>,
    consumer: Option<String>,
}

#[derive(Default)]
struct Builder {
    wires: Vec<Wire>,
    /// Node statements, indented per cluster depth.
    body: String,
    depth: usize,
    next_node: usize,
    next_cluster: usize,
}

impl Builder {
    fn wires_for(&mut self, t: &Ty, dir: Dir) -> Vec<usize> {
        t.factors()
            .iter()
            .map(|b| {
                let label = match b {
                    Base::Set(s) => s.name().to_string(),
                    Base::Num => "R".to_string(),
                };
                self.wires.push(Wire {
                    parent: self.wires.len(),
                    label,
                    dir,
                    producer: None,
                    consumer: None,
                });
                self.wires.len() - 1
            })
            .collect()
    }

    fn find(&mut self, mut w: usize) -> usize {
        while self.wires[w].parent != w {
            let p = self.wires[w].parent;
            self.wires[w].parent = self.wires[p].parent;
            w = p;
        }
        w
    }

    fn join(&mut self, a: &[usize], b: &[usize]) {
        for (&x, &y) in a.iter().zip(b) {
            let (rx, ry) = (self.find(x), self.find(y));
            if rx != ry {
                let (lo, hi) = (rx.min(ry), rx.max(ry));
                self.wires[hi].parent = lo;
            }
        }
    }

    fn line(&mut self, s: &str) {
        let _ = writeln!(self.body, "{}{s}", "  ".repeat(self.depth + 1));
    }

    fn node(&mut self, class: &str, attrs: &str) -> String {
        let id = format!("n{}", self.next_node);
        self.next_node += 1;
        self.line(&format!("{id} [class=\"{class}\", {attrs}];"));
        id
    }

    fn attach(&mut self, id: &str, ins: &[usize], outs: &[usize]) {
        for &w in ins {
            self.wires[w].consumer = Some(id.to_string());
        }
        for &w in outs {
            self.wires[w].producer = Some(id.to_string());
        }
    }

    /// Atomic node: consumes forward inputs and backward outputs of the
    /// codomain, produces the rest.
    fn atom(&mut self, class: &str, attrs: &str, w: &Ports) {
        let id = self.node(class, attrs);
        self.attach(&id, &w.dom_f, &w.dom_b);
        self.attach(&id, &w.cod_b, &w.cod_f);
    }

    fn emit(&mut self, t: &Typed, w: Ports) {
        match &t.kind {
            TypedKind::Decision { sel, .. } => {
                let attrs = format!("shape=box, label=\"{}\"", escape(sel.name()));
                self.atom("decision", &attrs, &w);
            }
            TypedKind::Lift {
                play_name, coplay_name, ..
            } => {
                let label = match coplay_name {
                    Some(g) => format!("{play_name} / {g}"),
                    None => play_name.clone(),
                };
                let attrs = format!("shape=box, style=rounded, label=\"{}\"", escape(&label));
                self.atom("function", &attrs, &w);
            }
            TypedKind::Counit(_) => self.atom("counit", "shape=circle, label=\"counit\"", &w),
            TypedKind::Copy(_) => self.atom("copy", "shape=circle, label=\"copy\"", &w),
            TypedKind::Delete(_) => self.atom("delete", "shape=circle, label=\"delete\"", &w),
            TypedKind::Swap(..) => self.atom("swap", "shape=box, style=rounded, label=\"swap\"", &w),
            TypedKind::Id(_) => {
                self.join(&w.dom_f, &w.cod_f);
                self.join(&w.dom_b, &w.cod_b);
            }
            TypedKind::Seq { first, second, whisker } => {
                let mid_f = self.wires_for(&first.cod.fwd, Dir::Fwd);
                let mid_b = self.wires_for(&first.cod.bwd, Dir::Bwd);
                self.emit(
                    first,
                    Ports {
                        dom_f: w.dom_f,
                        dom_b: w.dom_b,
                        cod_f: mid_f.clone(),
                        cod_b: mid_b.clone(),
                    },
                );
                let (nf, nb) = (second.dom.fwd.arity(), second.dom.bwd.arity());
                let (cf, cb) = (second.cod.fwd.arity(), second.cod.bwd.arity());
                if whisker.is_some() {
                    self.join(&mid_f[nf..], &w.cod_f[cf..]);
                    self.join(&mid_b[nb..], &w.cod_b[cb..]);
                }
                self.emit(
                    second,
                    Ports {
                        dom_f: mid_f[..nf].to_vec(),
                        dom_b: mid_b[..nb].to_vec(),
                        cod_f: w.cod_f[..cf].to_vec(),
                        cod_b: w.cod_b[..cb].to_vec(),
                    },
                );
            }
            TypedKind::Tensor(a, b) => {
                let (l, r) = w.split(a);
                self.emit(a, l);
                self.emit(b, r);
            }
            TypedKind::Ref { name, body } => {
                let n = self.next_cluster;
                self.next_cluster += 1;
                self.line(&format!("subgraph cluster_{n} {{"));
                self.depth += 1;
                self.line(&format!("label=\"{}\";", escape(name)));
                self.emit(body, w);
                self.depth -= 1;
                self.line("}");
            }
        }
    }
}

struct Ports {
    dom_f: Vec<usize>,
    dom_b: Vec<usize>,
    cod_f: Vec<usize>,
    cod_b: Vec<usize>,
}

impl Ports {
    /// Splits at the boundary of the left tensor factor `a`.
    fn split(self, a: &Typed) -> (Ports, Ports) {
        let cut = |v: Vec<usize>, n: usize| {
            let (l, r) = v.split_at(n);
            (l.to_vec(), r.to_vec())
        };
        let (df1, df2) = cut(self.dom_f, a.dom.fwd.arity());
        let (db1, db2) = cut(self.dom_b, a.dom.bwd.arity());
        let (cf1, cf2) = cut(self.cod_f, a.cod.fwd.arity());
        let (cb1, cb2) = cut(self.cod_b, a.cod.bwd.arity());
        (
            Ports {
                dom_f: df1,
                dom_b: db1,
                cod_f: cf1,
                cod_b: cb1,
            },
            Ports {
                dom_f: df2,
                dom_b: db2,
                cod_f: cf2,
                cod_b: cb2,
            },
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders a checked game expression as a DOT digraph. The output depends
/// only on the expression.
pub fn emit_dot(name: &str, t: &Typed) -> String {
    let mut b = Builder::default();
    let ports = Ports {
        dom_f: b.wires_for(&t.dom.fwd, Dir::Fwd),
        dom_b: b.wires_for(&t.dom.bwd, Dir::Bwd),
        cod_f: b.wires_for(&t.cod.fwd, Dir::Fwd),
        cod_b: b.wires_for(&t.cod.bwd, Dir::Bwd),
    };
    let (has_in, has_out) = (
        !(ports.dom_f.is_empty() && ports.dom_b.is_empty()),
        !(ports.cod_f.is_empty() && ports.cod_b.is_empty()),
    );
    if has_in {
        b.line("in [class=\"boundary\", shape=point];");
        b.attach("in", &ports.dom_b, &ports.dom_f);
    }
    if has_out {
        b.line("out [class=\"boundary\", shape=point];");
        b.attach("out", &ports.cod_f, &ports.cod_b);
    }
    b.emit(t, ports);

    let mut merged: Vec<(Option<String>, Option<String>)> = vec![(None, None); b.wires.len()];
    for w in 0..b.wires.len() {
        let r = b.find(w);
        if let Some(p) = b.wires[w].producer.clone() {
            merged[r].0 = Some(p);
        }
        if let Some(c) = b.wires[w].consumer.clone() {
            merged[r].1 = Some(c);
        }
    }
    let mut out = format!("digraph \"{}\" {{\n  rankdir=LR;\n", escape(name));
    out.push_str(&b.body);
    for (w, ends) in merged.iter().enumerate() {
        if b.find(w) != w {
            continue;
        }
        let (Some(p), Some(c)) = ends else { continue };
        let wire = &b.wires[w];
        let _ = match wire.dir {
            Dir::Fwd => writeln!(out, "  {p} -> {c} [label=\"{}\"];", escape(&wire.label)),
            Dir::Bwd => writeln!(
                out,
                "  {c} -> {p} [label=\"{}\", dir=back, style=dashed];",
                escape(&wire.label)
            ),
        };
    }
    out.push_str("}\n");
    out
}
