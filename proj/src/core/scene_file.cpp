#include "scene_file.hpp"

#include <fstream>
#include <sstream>

namespace diracred {

namespace {

struct Value {
    enum class Kind { String, Int, List } kind = Kind::String;
    std::string str;
    long num = 0;
    std::vector<Value> list;

    const std::string& as_string(int line) const {
        if (kind != Kind::String)
            throw Error(ErrorKind::ParseError, "expected a string at line " + std::to_string(line));
        return str;
    }
    std::vector<std::string> as_string_list(int line) const {
        if (kind != Kind::List)
            throw Error(ErrorKind::ParseError, "expected a list at line " + std::to_string(line));
        std::vector<std::string> out;
        for (const auto& v : list) out.push_back(v.as_string(line));
        return out;
    }
};

struct Entry {
    std::string key;
    Value value;
    int line = 0;
};

struct SectionBlock {
    std::string name;
    std::vector<Entry> entries;
    int line = 0;
};

class ValueParser {
public:
    ValueParser(const std::string& text, int line) : text_(text), line_(line) {}

    Value parse() {
        Value v = value();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters after value");
        return v;
    }

private:
    Value value() {
        skip_ws();
        if (pos_ >= text_.size()) fail("missing value");
        char c = text_[pos_];
        if (c == '"') return string_value();
        if (c == '[') return list_value();
        if (c == '-' || std::isdigit((unsigned char)c)) return int_value();
        fail(std::string("unexpected character '") + c + "' in value");
        return {};
    }

    Value string_value() {
        ++pos_; // opening quote
        Value v;
        v.kind = Value::Kind::String;
        while (pos_ < text_.size() && text_[pos_] != '"') v.str += text_[pos_++];
        if (pos_ >= text_.size()) fail("unterminated string");
        ++pos_;
        return v;
    }

    Value int_value() {
        Value v;
        v.kind = Value::Kind::Int;
        std::size_t start = pos_;
        if (text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
        v.num = std::stol(text_.substr(start, pos_ - start));
        return v;
    }

    Value list_value() {
        ++pos_; // '['
        Value v;
        v.kind = Value::Kind::List;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            return v;
        }
        while (true) {
            v.list.push_back(value());
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (pos_ < text_.size() && text_[pos_] == ']') {
                ++pos_;
                return v;
            }
            fail("expected ',' or ']' in list");
        }
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw Error(ErrorKind::ParseError,
                    why + " at line " + std::to_string(line_) + ", column " + std::to_string(pos_ + 1),
                    pos_);
    }

    const std::string& text_;
    int line_;
    std::size_t pos_ = 0;
};

std::vector<SectionBlock> tokenize(const std::string& text) {
    std::vector<SectionBlock> sections;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        // strip comments outside strings
        bool in_str = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            else if (line[i] == '#' && !in_str) {
                line = line.substr(0, i);
                break;
            }
        }
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);

        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error(ErrorKind::ParseError,
                            "malformed section header at line " + std::to_string(line_no));
            sections.push_back({line.substr(1, line.size() - 2), {}, line_no});
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ParseError,
                        "expected 'key = value' at line " + std::to_string(line_no));
        if (sections.empty())
            throw Error(ErrorKind::ParseError,
                        "entry before any section header at line " + std::to_string(line_no));
        std::string key = line.substr(0, eq);
        std::size_t ke = key.find_last_not_of(" \t");
        key = key.substr(0, ke + 1);
        std::string val = line.substr(eq + 1);
        sections.back().entries.push_back({key, ValueParser(val, line_no).parse(), line_no});
    }
    return sections;
}

std::vector<Rat> parse_point(const Value& v, int line, std::size_t dim) {
    auto strs = v.as_string_list(line);
    if (strs.size() != dim)
        throw Error(ErrorKind::ParseError,
                    "point has " + std::to_string(strs.size()) + " entries, chart needs " +
                        std::to_string(dim) + " (line " + std::to_string(line) + ")");
    std::vector<Rat> p;
    for (const auto& s : strs) p.push_back(rat_from_string(s));
    return p;
}

ConstraintRel parse_rel(const std::string& op, int line) {
    if (op == ">") return ConstraintRel::Greater;
    if (op == ">=") return ConstraintRel::GreaterEq;
    if (op == "=" || op == "==") return ConstraintRel::Equal;
    if (op == "!=") return ConstraintRel::NotEqual;
    throw Error(ErrorKind::ParseError,
                "unknown constraint relation '" + op + "' at line " + std::to_string(line));
}

StratumConstraint parse_constraint(const std::string& text, const ChartPtr& params, int line) {
    // "expr OP 0"
    std::size_t pos = std::string::npos;
    std::string op;
    for (const std::string& cand : {">=", "!=", "==", ">", "="}) {
        pos = text.rfind(cand);
        if (pos != std::string::npos) {
            op = cand;
            break;
        }
    }
    if (pos == std::string::npos)
        throw Error(ErrorKind::ParseError,
                    "constraint needs 'expr OP 0' at line " + std::to_string(line));
    std::string lhs = text.substr(0, pos);
    std::string rhs = text.substr(pos + op.size());
    std::size_t re = rhs.find_first_not_of(" \t");
    if (re == std::string::npos || rhs.substr(re) != "0")
        throw Error(ErrorKind::ParseError,
                    "constraint right-hand side must be 0 at line " + std::to_string(line));
    RatFn e = parse_expr(lhs, params);
    if (!e.is_polynomial())
        throw Error(ErrorKind::ParseError,
                    "constraint polynomial expected at line " + std::to_string(line));
    return {e.as_polynomial(), parse_rel(op, line)};
}

} // namespace

Scene load_scene_text(const std::string& text, const std::string& scene_name) {
    auto sections = tokenize(text);

    auto find_one = [&](const std::string& name) -> const SectionBlock* {
        const SectionBlock* found = nullptr;
        for (const auto& s : sections) {
            if (s.name != name) continue;
            if (found)
                throw Error(ErrorKind::ParseError, "duplicate section [" + name + "]");
            found = &s;
        }
        return found;
    };
    auto need = [&](const std::string& name) -> const SectionBlock& {
        const SectionBlock* s = find_one(name);
        if (!s) throw Error(ErrorKind::ParseError, "missing required section [" + name + "]");
        return *s;
    };

    // [chart]
    const auto& chart_sec = need("chart");
    ChartPtr chart;
    for (const auto& e : chart_sec.entries) {
        if (e.key == "coords") chart = make_chart("M", e.value.as_string_list(e.line));
        else throw Error(ErrorKind::ParseError, "unknown key '" + e.key + "' in [chart]");
    }
    if (!chart) throw Error(ErrorKind::ParseError, "[chart] needs coords");

    // [action]
    const auto& act_sec = need("action");
    std::string kind;
    std::vector<VectorField> gens;
    for (const auto& e : act_sec.entries) {
        if (e.key == "kind") kind = e.value.as_string(e.line);
        else if (e.key == "generator")
            gens.push_back(VectorField::parse(chart, e.value.as_string_list(e.line)));
        else throw Error(ErrorKind::ParseError, "unknown key '" + e.key + "' in [action]");
    }
    std::optional<GroupAction> action;
    if (kind == "trivial") action = GroupAction::trivial(chart);
    else if (kind == "circle") {
        if (gens.size() != 1)
            throw Error(ErrorKind::ParseError, "circle action needs exactly one generator");
        action = GroupAction::circle(chart, gens[0]);
    } else if (kind == "torus") action = GroupAction::torus(chart, gens);
    else if (kind == "so3") action = GroupAction::so3_diagonal(chart, gens);
    else throw Error(ErrorKind::ParseError, "unknown action kind '" + kind + "'");

    // [invariants]
    const auto& inv_sec = need("invariants");
    std::vector<std::string> names;
    std::vector<Poly> basis_fns;
    for (const auto& e : inv_sec.entries) {
        if (e.key == "names") names = e.value.as_string_list(e.line);
        else if (e.key == "basis") {
            for (const auto& s : e.value.as_string_list(e.line)) {
                RatFn f = parse_expr(s, chart);
                if (!f.is_polynomial())
                    throw Error(ErrorKind::ParseError,
                                "invariant basis entries must be polynomials, got " + s);
                basis_fns.push_back(f.as_polynomial());
            }
        } else throw Error(ErrorKind::ParseError, "unknown key '" + e.key + "' in [invariants]");
    }
    if (names.empty())
        for (std::size_t i = 0; i < basis_fns.size(); ++i) names.push_back("f" + std::to_string(i + 1));
    ChartPtr target = make_chart("Mbar", names);
    InvariantBasis basis(*action, basis_fns); // NotInvariant -> ValidationError below
    QuotientMap quotient(chart, target, basis);

    // [dirac]
    const auto& dir_sec = need("dirac");
    std::vector<Section> dirac_gens;
    std::optional<VectorField> pending_x;
    for (const auto& e : dir_sec.entries) {
        if (e.key == "X") {
            if (pending_x)
                throw Error(ErrorKind::ParseError,
                            "X without matching alpha at line " + std::to_string(e.line));
            pending_x = VectorField::parse(chart, e.value.as_string_list(e.line));
        } else if (e.key == "alpha") {
            if (!pending_x)
                throw Error(ErrorKind::ParseError,
                            "alpha without preceding X at line " + std::to_string(e.line));
            dirac_gens.emplace_back(*pending_x,
                                    OneForm::parse(chart, e.value.as_string_list(e.line)));
            pending_x.reset();
        } else throw Error(ErrorKind::ParseError, "unknown key '" + e.key + "' in [dirac]");
    }
    if (pending_x) throw Error(ErrorKind::ParseError, "[dirac] ends with X missing its alpha");

    // [samples]
    std::vector<std::vector<Rat>> samples;
    if (const auto* ss = find_one("samples")) {
        for (const auto& e : ss->entries) {
            if (e.key == "point") samples.push_back(parse_point(e.value, e.line, chart->dim()));
            else throw Error(ErrorKind::ParseError, "unknown key '" + e.key + "' in [samples]");
        }
    }

    DiracStructure dirac(chart, dirac_gens, samples);

    // [descending] (optional)
    std::vector<DescendingSection> descending;
    if (const auto* ds = find_one("descending")) {
        std::optional<VectorField> dx;
        std::optional<OneForm> da;
        auto flush = [&](const OneFormPresentation& pres, int line) {
            if (!dx || !da)
                throw Error(ErrorKind::ParseError,
                            "descending entry needs X and alpha before present (line " +
                                std::to_string(line) + ")");
            descending.push_back({Section(*dx, *da), pres});
            dx.reset();
            da.reset();
        };
        for (const auto& e : ds->entries) {
            if (e.key == "X") {
                if (dx && da) flush({}, e.line); // previous candidate had no `present`
                dx = VectorField::parse(chart, e.value.as_string_list(e.line));
            } else if (e.key == "alpha") {
                da = OneForm::parse(chart, e.value.as_string_list(e.line));
            } else if (e.key == "present") {
                OneFormPresentation pres;
                if (e.value.kind != Value::Kind::List)
                    throw Error(ErrorKind::ParseError,
                                "present expects a list of (g, f) pairs at line " +
                                    std::to_string(e.line));
                for (const auto& pair : e.value.list) {
                    auto pieces = pair.as_string_list(e.line);
                    if (pieces.size() != 2)
                        throw Error(ErrorKind::ParseError,
                                    "presentation pairs are [g, f] at line " + std::to_string(e.line));
                    RatFn g = parse_expr(pieces[0], chart);
                    RatFn f = parse_expr(pieces[1], chart);
                    if (!f.is_polynomial())
                        throw Error(ErrorKind::ParseError,
                                    "presentation functions must be polynomial at line " +
                                        std::to_string(e.line));
                    pres.pairs.emplace_back(g, f.as_polynomial());
                }
                flush(pres, e.line);
            } else throw Error(ErrorKind::ParseError, "unknown key '" + e.key + "' in [descending]");
        }
        if (dx && da) flush({}, ds->line);
        else if (dx)
            throw Error(ErrorKind::ParseError, "[descending] ends with X missing its alpha");
    }

    // [fields] (optional)
    std::vector<VectorField> fields;
    if (const auto* fs = find_one("fields")) {
        for (const auto& e : fs->entries) {
            if (e.key == "field")
                fields.push_back(VectorField::parse(chart, e.value.as_string_list(e.line)));
            else throw Error(ErrorKind::ParseError, "unknown key '" + e.key + "' in [fields]");
        }
    }

    // [strata] (repeated)
    std::vector<StratumChart> strata;
    for (const auto& sec : sections) {
        if (sec.name != "strata") continue;
        StratumChart st;
        std::vector<std::string> embed_exprs;
        std::vector<std::string> constraint_texts;
        std::vector<std::string> membership_exprs;
        for (const auto& e : sec.entries) {
            if (e.key == "name") st.name = e.value.as_string(e.line);
            else if (e.key == "params") st.params = make_chart(st.name, e.value.as_string_list(e.line));
            else if (e.key == "embed") embed_exprs = e.value.as_string_list(e.line);
            else if (e.key == "constrain") constraint_texts = e.value.as_string_list(e.line);
            else if (e.key == "membership") membership_exprs = e.value.as_string_list(e.line);
            else if (e.key == "upstairs") {
                for (const auto& v : e.value.list)
                    st.upstairs_samples.push_back(parse_point(v, e.line, chart->dim()));
            } else throw Error(ErrorKind::ParseError, "unknown key '" + e.key + "' in [strata]");
        }
        if (st.name.empty() || !st.params)
            throw Error(ErrorKind::ParseError, "[strata] needs name and params (line " +
                                                   std::to_string(sec.line) + ")");
        for (const auto& s : embed_exprs) st.embedding.push_back(parse_expr(s, st.params));
        for (const auto& s : constraint_texts)
            st.constraints.push_back(parse_constraint(s, st.params, sec.line));
        for (const auto& s : membership_exprs) {
            RatFn f = parse_expr(s, chart);
            if (!f.is_polynomial())
                throw Error(ErrorKind::ParseError, "membership entries must be polynomials");
            st.upstairs_membership.push_back(f.as_polynomial());
        }
        st.validate(quotient);
        strata.push_back(std::move(st));
    }

    return Scene{scene_name, chart,  *action, quotient, dirac, descending,
                 fields,     strata, samples, SceneExpected{}};
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot open scene file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string name = path;
    auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return load_scene_text(buf.str(), name);
}

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string string_list(const std::vector<std::string>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += quote(xs[i]);
    }
    return out + "]";
}

std::vector<std::string> component_strings(const std::vector<RatFn>& comps) {
    std::vector<std::string> out;
    out.reserve(comps.size());
    for (const auto& f : comps) out.push_back(f.to_string());
    return out;
}

std::string point_list(const std::vector<std::vector<Rat>>& pts) {
    std::string out = "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ", ";
        std::vector<std::string> xs;
        for (const auto& r : pts[i]) xs.push_back(rat_to_string(r));
        out += string_list(xs);
    }
    return out + "]";
}

} // namespace

std::string scene_to_text(const Scene& s) {
    std::ostringstream out;
    out << "[chart]\n";
    out << "coords = " << string_list(s.chart->coords) << "\n\n";

    out << "[action]\n";
    switch (s.action.kind()) {
        case GroupKind::Trivial: out << "kind = \"trivial\"\n"; break;
        case GroupKind::Circle: out << "kind = \"circle\"\n"; break;
        case GroupKind::Torus: out << "kind = \"torus\"\n"; break;
        case GroupKind::SO3: out << "kind = \"so3\"\n"; break;
    }
    for (const auto& g : s.action.fundamental_fields())
        out << "generator = " << string_list(component_strings(g.components)) << "\n";
    out << "\n[invariants]\n";
    out << "names = " << string_list(s.quotient.target->coords) << "\n";
    {
        std::vector<std::string> fs;
        for (const auto& f : s.quotient.basis.fns) fs.push_back(f.to_string());
        out << "basis = " << string_list(fs) << "\n";
    }
    out << "\n[dirac]\n";
    for (const auto& g : s.dirac.generators()) {
        out << "X = " << string_list(component_strings(g.x.components)) << "\n";
        out << "alpha = " << string_list(component_strings(g.alpha.components)) << "\n";
    }
    if (!s.descending.empty()) {
        out << "\n[descending]\n";
        for (const auto& d : s.descending) {
            out << "X = " << string_list(component_strings(d.section.x.components)) << "\n";
            out << "alpha = " << string_list(component_strings(d.section.alpha.components)) << "\n";
            out << "present = [";
            for (std::size_t i = 0; i < d.presentation.pairs.size(); ++i) {
                if (i) out << ", ";
                out << "[" << quote(d.presentation.pairs[i].first.to_string()) << ", "
                    << quote(d.presentation.pairs[i].second.to_string()) << "]";
            }
            out << "]\n";
        }
    }
    if (!s.declared_fields.empty()) {
        out << "\n[fields]\n";
        for (const auto& f : s.declared_fields)
            out << "field = " << string_list(component_strings(f.components)) << "\n";
    }
    for (const auto& st : s.strata) {
        out << "\n[strata]\n";
        out << "name = " << quote(st.name) << "\n";
        out << "params = " << string_list(st.params->coords) << "\n";
        out << "embed = " << string_list(component_strings(st.embedding)) << "\n";
        out << "constrain = [";
        for (std::size_t i = 0; i < st.constraints.size(); ++i) {
            if (i) out << ", ";
            const char* op = "=";
            switch (st.constraints[i].rel) {
                case ConstraintRel::Greater: op = ">"; break;
                case ConstraintRel::GreaterEq: op = ">="; break;
                case ConstraintRel::Equal: op = "="; break;
                case ConstraintRel::NotEqual: op = "!="; break;
            }
            out << quote(st.constraints[i].lhs.to_string() + " " + op + " 0");
        }
        out << "]\n";
        out << "upstairs = " << point_list(st.upstairs_samples) << "\n";
        if (!st.upstairs_membership.empty()) {
            std::vector<std::string> ms;
            for (const auto& m : st.upstairs_membership) ms.push_back(m.to_string());
            out << "membership = " << string_list(ms) << "\n";
        }
    }
    out << "\n[samples]\n";
    for (const auto& p : s.samples) {
        std::vector<std::string> xs;
        for (const auto& r : p) xs.push_back(rat_to_string(r));
        out << "point = " << string_list(xs) << "\n";
    }
    return out.str();
}

} // namespace diracred
