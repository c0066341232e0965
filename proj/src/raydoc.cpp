#include "kslat/raydoc.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kslat {

namespace {

bool is_rational_literal(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  bool digits = false, slash = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      return false;
    }
  }
  return digits;
}

Rational parse_rational(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (!is_rational_literal(t)) throw ParseError("bad rational literal: " + s);
  Rational q(t);
  q.canonicalize();
  return q;
}

}  // namespace

Surd parse_exact_scalar(const std::string& token) {
  size_t pos = token.find("sqrt(");
  if (pos == std::string::npos) return Surd(parse_rational(token));
  size_t close = token.find(')', pos);
  if (close == std::string::npos || close != token.size() - 1)
    throw ParseError("bad surd literal: " + token);
  std::string rstr = token.substr(pos + 5, close - pos - 5);
  if (!is_rational_literal(rstr) || rstr.find('/') != std::string::npos ||
      rstr[0] == '-')
    throw ParseError("bad radicand: " + token);
  long r = std::stol(rstr);
  if (r < 2) throw ParseError("radicand must be at least 2: " + token);

  std::string pre = token.substr(0, pos);
  Rational a(0), b(1);
  if (pre.empty()) {
    // sqrt(r)
  } else if (pre == "-") {
    b = -1;
  } else if (pre == "+") {
    // +sqrt(r)
  } else {
    bool explicit_coef = pre.back() == '*';
    std::string body = explicit_coef ? pre.substr(0, pre.size() - 1) : pre;
    if (!explicit_coef) {
      // a+sqrt(r) / a-sqrt(r): body must end with the sign.
      if (body.back() != '+' && body.back() != '-')
        throw ParseError("bad surd literal: " + token);
      b = body.back() == '-' ? -1 : 1;
      body.pop_back();
      a = parse_rational(body);
    } else {
      // [a+|a-]b*sqrt(r): split at the last sign preceded by a digit.
      size_t split = std::string::npos;
      for (size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') &&
            std::isdigit(static_cast<unsigned char>(body[i - 1]))) {
          split = i;
          break;
        }
      }
      if (split == std::string::npos) {
        b = parse_rational(body);
      } else {
        a = parse_rational(body.substr(0, split));
        b = parse_rational(body.substr(split));
      }
    }
  }
  return Surd(a, b, r);
}

namespace {

struct RawDoc {
  int dim = -1;
  Mode mode = Mode::Exact;
  int declared = -1;
  std::vector<std::vector<std::string>> rows;
};

RawDoc read_raw(std::istream& in) {
  RawDoc doc;
  std::string line;
  bool have_mode = false;
  while (std::getline(in, line)) {
    size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string t;
    while (ls >> t) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens[0] == "dim" && doc.dim < 0 && tokens.size() == 2) {
      doc.dim = std::stoi(tokens[1]);
    } else if (tokens[0] == "mode" && !have_mode && tokens.size() == 2) {
      if (tokens[1] == "exact") {
        doc.mode = Mode::Exact;
      } else if (tokens[1] == "float") {
        doc.mode = Mode::Float;
      } else {
        throw ParseError("mode must be exact or float");
      }
      have_mode = true;
    } else if (tokens[0] == "rays" && doc.declared < 0 && tokens.size() == 2) {
      doc.declared = std::stoi(tokens[1]);
    } else {
      doc.rows.push_back(tokens);
    }
  }
  if (doc.dim <= 0) throw ParseError("missing or bad `dim` header");
  if (!have_mode) throw ParseError("missing `mode` header");
  if (doc.declared < 0) throw ParseError("missing `rays` header");
  if (int(doc.rows.size()) != doc.declared)
    throw ParseError("declared ray count " + std::to_string(doc.declared) +
                     " does not match body (" + std::to_string(doc.rows.size()) +
                     " rows)");
  return doc;
}

}  // namespace

RayConfiguration load_ray_document(std::istream& in,
                                   const RayDocumentOptions& opts) {
  RawDoc doc = read_raw(in);
  RayConfiguration cfg;
  if (doc.mode == Mode::Exact) {
    std::vector<XMat> rays;
    for (const auto& row : doc.rows) {
      if (int(row.size()) != doc.dim)
        throw DimensionMismatch("ray component count does not match dim");
      XMat v(doc.dim, 1);
      for (int i = 0; i < doc.dim; ++i)
        v(i, 0) = XComplex(parse_exact_scalar(row[i]));
      rays.push_back(std::move(v));
    }
    cfg = make_ray_configuration(doc.dim, std::move(rays), {}, opts.dedupe);
  } else {
    std::vector<CMat> rays;
    for (const auto& row : doc.rows) {
      if (int(row.size()) != doc.dim)
        throw DimensionMismatch("ray component count does not match dim");
      CMat v(doc.dim, 1);
      for (int i = 0; i < doc.dim; ++i) {
        try {
          v(i, 0) = Complex(std::stod(row[i]), 0.0);
        } catch (const std::exception&) {
          throw ParseError("bad float literal: " + row[i]);
        }
      }
      rays.push_back(std::move(v));
    }
    cfg = make_ray_configuration_float(doc.dim, std::move(rays), {},
                                       opts.dedupe, opts.tol);
  }
  cfg.hash = fnv1a64(canonical_document(cfg));
  return cfg;
}

RayConfiguration load_ray_string(const std::string& text,
                                 const RayDocumentOptions& opts) {
  std::istringstream in(text);
  return load_ray_document(in, opts);
}

RayConfiguration load_ray_file(const std::string& path,
                               const RayDocumentOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open ray document: " + path);
  return load_ray_document(in, opts);
}

std::string canonical_document(const RayConfiguration& cfg) {
  std::ostringstream os;
  os << "dim " << cfg.dim << "\n";
  os << "mode " << (cfg.mode == Mode::Exact ? "exact" : "float") << "\n";
  os << "rays " << cfg.size() << "\n";
  for (int i = 0; i < cfg.size(); ++i) {
    for (int j = 0; j < cfg.dim; ++j) {
      if (j) os << " ";
      if (cfg.mode == Mode::Exact) {
        os << cfg.exact_rays[i](j, 0).re.str();
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g",
                      cfg.float_rays[i](j, 0).real());
        os << buf;
      }
    }
    os << "\n";
  }
  return os.str();
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace kslat
