#include "sheafwb/sheaf_io.hpp"

#include <filesystem>
#include <optional>

#include "sheafwb/error.hpp"
#include "text_util.hpp"

namespace sheafwb {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> head;  // words before ':'
  std::vector<std::string> body;  // tokens after ':'
  bool has_colon;
};

std::vector<std::string> tokenize_body(std::string_view s) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '(' || c == ')' || c == ',') {
      flush();
      out.emplace_back(1, c);
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      flush();
      out.emplace_back("->");
      ++i;
    } else {
      word += c;
    }
  }
  flush();
  return out;
}

class Reader {
 public:
  Reader(const std::vector<std::string>& tokens, std::size_t line) : t_(tokens), line_(line) {}

  bool done() const { return i_ == t_.size(); }
  const std::string& peek() const { return t_[i_]; }

  std::string word() {
    if (done()) fail("unexpected end of line");
    const std::string& w = t_[i_];
    if (w == "(" || w == ")" || w == "," || w == "->") fail("unexpected '" + w + "'");
    ++i_;
    return w;
  }

  void expect(const char* tok) {
    if (done() || t_[i_] != tok) fail(std::string("expected '") + tok + "'");
    ++i_;
  }

  std::vector<std::string> tuple() {
    std::vector<std::string> out;
    if (!done() && peek() == "(") {
      ++i_;
      out.push_back(word());
      while (!done() && peek() == ",") {
        ++i_;
        out.push_back(word());
      }
      expect(")");
    } else {
      out.push_back(word());
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_); }

 private:
  const std::vector<std::string>& t_;
  std::size_t i_ = 0;
  std::size_t line_;
};

}  // namespace

SheafDocument parse_sheaf(std::string_view text, const std::string& base_dir,
                          bool infer_transitions) {
  std::vector<Line> lines;
  std::size_t number = 0;
  for (auto raw : detail::lines_of(text)) {
    ++number;
    auto content = detail::trim(detail::strip_comment(raw));
    if (content.empty()) continue;
    const auto colon = content.find(':');
    Line line{number, {}, {}, colon != std::string_view::npos};
    line.head = detail::split_ws(content.substr(0, colon));
    if (line.has_colon) line.body = tokenize_body(content.substr(colon + 1));
    lines.push_back(std::move(line));
  }

  std::optional<Site> used;
  std::string inline_site;
  for (const auto& line : lines) {
    const auto& kw = line.head[0];
    if (kw == "use") {
      if (line.head.size() != 2 || line.has_colon) {
        throw ParseError("expected `use <site-file>`", line.number);
      }
      if (used) throw ParseError("more than one `use` line", line.number);
      auto path = std::filesystem::path(base_dir) / line.head[1];
      try {
        used = load_site(path.string());
      } catch (const ParseError& e) {
        throw ParseError(std::string("in site file: ") + e.what(), line.number);
      }
    } else if (kw == "node" || kw == "le") {
      for (const auto& w : line.head) inline_site += w + " ";
      inline_site += "\n";
    }
  }
  if (used && !inline_site.empty()) {
    throw ParseError("a sheaf file cannot both `use` a site and declare nodes");
  }
  Site site = used ? *used : parse_site(inline_site);
  if (site.size() == 0) throw ParseError("sheaf file declares no site");

  SheafBuilder builder(site);
  auto node_of = [&](const std::string& name, std::size_t line_no) {
    auto x = site.find(name);
    if (!x) throw ParseError("unknown node '" + name + "'", line_no);
    return *x;
  };
  auto element_of = [&](NodeId x, const std::string& name, std::size_t line_no) {
    auto a = builder.element_or_none(x, name);
    if (a == kNone) {
      throw ParseError("unknown element '" + name + "' at node " + site.name(x), line_no);
    }
    return a;
  };

  for (const auto& line : lines) {
    if (line.head[0] != "sort") continue;
    if (line.head.size() != 2 || !line.has_colon) {
      throw ParseError("expected `sort <node>: e ...`", line.number);
    }
    const NodeId x = node_of(line.head[1], line.number);
    Reader r(line.body, line.number);
    while (!r.done()) {
      auto name = r.word();
      if (builder.element_or_none(x, name) != kNone) {
        throw ParseError("duplicate element '" + name + "'", line.number);
      }
      builder.add_element(x, name);
    }
  }

  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections;
  std::vector<std::string> empty_relations;
  for (const auto& line : lines) {
    const auto& kw = line.head[0];
    if (kw == "use" || kw == "node" || kw == "le" || kw == "sort") continue;
    if (!line.has_colon) throw ParseError("expected ':' in `" + kw + "` line", line.number);
    Reader r(line.body, line.number);
    try {
      if (kw == "map") {
        if (line.head.size() != 3) throw ParseError("expected `map <x> <y>: ...`", line.number);
        const NodeId x = node_of(line.head[1], line.number);
        const NodeId y = node_of(line.head[2], line.number);
        if (!site.leq(x, y)) {
          throw ParseError("map between unordered nodes " + line.head[1] + ", " + line.head[2],
                           line.number);
        }
        while (!r.done()) {
          const Element a = element_of(x, r.word(), line.number);
          r.expect("->");
          builder.set_transition(x, y, a, element_of(y, r.word(), line.number));
        }
      } else if (kw == "rel") {
        if (line.head.size() != 3) throw ParseError("expected `rel <R>[/n] <node>: ...`", line.number);
        std::string name = line.head[1];
        std::optional<std::size_t> arity;
        if (auto slash = name.find('/'); slash != std::string::npos) {
          try {
            arity = std::stoul(name.substr(slash + 1));
          } catch (const std::exception&) {
            throw ParseError("bad arity in '" + name + "'", line.number);
          }
          name = name.substr(0, slash);
        }
        const NodeId x = node_of(line.head[2], line.number);
        std::vector<Tuple> tuples;
        while (!r.done()) {
          Tuple t;
          for (const auto& e : r.tuple()) t.push_back(element_of(x, e, line.number));
          if (!arity) arity = t.size();
          if (t.size() != *arity) throw ParseError("arity mismatch for relation " + name, line.number);
          tuples.push_back(std::move(t));
        }
        if (!arity) arity = builder.signature().relation_arity(name);
        if (!arity) {
          empty_relations.push_back(name);
          continue;
        }
        builder.declare_relation(name, *arity);
        for (auto& t : tuples) builder.add_tuple(name, x, std::move(t));
      } else if (kw == "fun") {
        if (line.head.size() != 3) throw ParseError("expected `fun <f> <node>: ...`", line.number);
        const std::string& name = line.head[1];
        const NodeId x = node_of(line.head[2], line.number);
        while (!r.done()) {
          Tuple args;
          for (const auto& e : r.tuple()) args.push_back(element_of(x, e, line.number));
          r.expect("->");
          const Element v = element_of(x, r.word(), line.number);
          builder.declare_function(name, args.size());
          builder.set_function(name, x, std::move(args), v);
        }
      } else if (kw == "const") {
        if (line.head.size() != 3) throw ParseError("expected `const <c> <node>: e`", line.number);
        const NodeId x = node_of(line.head[2], line.number);
        const Element v = element_of(x, r.word(), line.number);
        if (!r.done()) r.fail("trailing tokens after constant value");
        builder.declare_constant(line.head[1]);
        builder.set_constant(line.head[1], x, v);
      } else if (kw == "section") {
        if (line.head.size() != 2) throw ParseError("expected `section <s>: ...`", line.number);
        std::vector<std::pair<std::string, std::string>> values;
        while (!r.done()) {
          auto node = r.word();
          r.expect("->");
          values.emplace_back(node, r.word());
        }
        sections.emplace_back(line.head[1], std::move(values));
      } else {
        throw ParseError("unknown declaration '" + kw + "'", line.number);
      }
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line.number);
    }
  }

  for (const auto& name : empty_relations) {
    if (!builder.signature().relation_arity(name)) builder.declare_relation(name, 1);
  }
  SheafDocument doc{builder.build(infer_transitions), {}};
  number = 0;
  for (const auto& [name, values] : sections) {
    if (doc.sections.count(name)) throw ParseError("duplicate section '" + name + "'");
    NodeSet domain;
    Section sigma = empty_section(site);
    for (const auto& [node, elem] : values) {
      const NodeId x = node_of(node, 0);
      if (domain.contains(x)) throw ParseError("section " + name + " lists " + node + " twice");
      domain.insert(x);
      sigma.values[x] = element_of(x, elem, 0);
    }
    if (!site.is_open(domain)) {
      throw ParseError("domain of section " + name + " is not an open set");
    }
    sigma.domain = site.open(domain);
    doc.sections.emplace(name, std::move(sigma));
  }
  return doc;
}

SheafDocument load_sheaf(const std::string& path, bool infer_transitions) {
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_sheaf(detail::read_file(path), dir.empty() ? "." : dir.string(), infer_transitions);
}

}  // namespace sheafwb
