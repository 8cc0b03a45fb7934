#include "plurigeo/report.hpp"

#include <cstdio>

namespace plurigeo {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

class JsonWriter {
 public:
  void begin_object() {
    pre_value();
    out_ += '{';
    stack_.push_back({false, 0});
  }
  void end_object() { close('}'); }
  void begin_array() {
    pre_value();
    out_ += '[';
    stack_.push_back({true, 0});
  }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    if (stack_.back().count > 0) out_ += ',';
    ++stack_.back().count;
    newline_indent(stack_.size());
    quote(k);
    out_ += ": ";
    after_key_ = true;
  }

  void value(double x) { pre_value(); out_ += fmt17(x); }
  void value(bool b) { pre_value(); out_ += b ? "true" : "false"; }
  void value(int i) { pre_value(); out_ += std::to_string(i); }
  void value(std::uint64_t i) { pre_value(); out_ += std::to_string(i); }
  void value(std::string_view s) { pre_value(); quote(s); }
  void value(const char* s) { value(std::string_view(s)); }  // keep literals off the bool overload

  std::string take() {
    out_ += '\n';
    return std::move(out_);
  }

 private:
  struct Level {
    bool array;
    int count;
  };

  void pre_value() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!stack_.empty() && stack_.back().array) {
      if (stack_.back().count > 0) out_ += ',';
      ++stack_.back().count;
      newline_indent(stack_.size());
    }
  }

  void close(char c) {
    Level level = stack_.back();
    stack_.pop_back();
    if (level.count > 0) newline_indent(stack_.size());
    out_ += c;
  }

  void newline_indent(std::size_t depth) {
    out_ += '\n';
    out_.append(2 * depth, ' ');
  }

  void quote(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

void write_config(JsonWriter& w, const ReportConfig& cfg) {
  w.key("config");
  w.begin_object();
  w.key("command");
  w.value(cfg.command);
  auto opt = [&w](const char* k, const std::string& v) {
    if (!v.empty()) {
      w.key(k);
      w.value(v);
    }
  };
  opt("metric", cfg.metric);
  opt("map", cfg.map);
  opt("psi", cfg.psi);
  opt("phi", cfg.phi);
  opt("source_metric", cfg.source_metric);
  opt("target_metric", cfg.target_metric);
  if (cfg.dim > 0) {
    w.key("dim");
    w.value(cfg.dim);
  }
  w.key("samples");
  w.value(cfg.samples);
  w.key("seed");
  w.value(cfg.seed);
  w.key("tol");
  w.value(cfg.tol);
  w.key("fd_step");
  w.value(cfg.fd_step);
  w.key("box");
  w.value(cfg.box);
  w.key("format");
  w.value(cfg.format);
  w.end_object();
}

void write_point(JsonWriter& w, const ChartPoint& p) {
  w.begin_array();
  for (const auto& c : p.z) {
    w.begin_array();
    w.value(c.real());
    w.value(c.imag());
    w.end_array();
  }
  w.end_array();
}

void write_config_text(std::string& out, const ReportConfig& cfg) {
  out += "command: " + cfg.command + "\n";
  auto opt = [&out](const char* k, const std::string& v) {
    if (!v.empty()) out += std::string(k) + ": " + v + "\n";
  };
  opt("metric", cfg.metric);
  opt("map", cfg.map);
  opt("psi", cfg.psi);
  opt("phi", cfg.phi);
  opt("source_metric", cfg.source_metric);
  opt("target_metric", cfg.target_metric);
  if (cfg.dim > 0) out += "dim: " + std::to_string(cfg.dim) + "\n";
  out += "samples: " + std::to_string(cfg.samples) + "  seed: " + std::to_string(cfg.seed) +
         "  tol: " + fmt_short(cfg.tol) + "  box: " + fmt_short(cfg.box) + "\n";
}

const char* yesno(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string render_classify_json(const ReportConfig& cfg, const StructureReport& rep) {
  JsonWriter w;
  w.begin_object();
  write_config(w, cfg);
  w.key("samples");
  w.begin_array();
  for (std::size_t s = 0; s < rep.samples.size(); ++s) {
    w.begin_object();
    w.key("point");
    write_point(w, rep.samples[s]);
    w.key("residuals");
    w.begin_object();
    w.key("integrability");
    w.value(rep.per_sample[s].integrability);
    w.key("one_two_symplectic");
    w.value(rep.per_sample[s].one_two_symplectic);
    w.key("kaehler");
    w.value(rep.per_sample[s].kaehler);
    w.key("cosymplectic");
    w.value(rep.per_sample[s].cosymplectic);
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.key("summary");
  w.begin_object();
  w.key("max_residuals");
  w.begin_object();
  w.key("integrability");
  w.value(rep.max_integrability);
  w.key("one_two_symplectic");
  w.value(rep.max_one_two_symplectic);
  w.key("kaehler");
  w.value(rep.max_kaehler);
  w.key("cosymplectic");
  w.value(rep.max_cosymplectic);
  w.end_object();
  w.key("verdicts");
  w.begin_object();
  w.key("integrable");
  w.value(rep.integrable);
  w.key("one_two_symplectic");
  w.value(rep.one_two_symplectic);
  w.key("kaehler");
  w.value(rep.kaehler);
  w.key("cosymplectic");
  w.value(rep.cosymplectic);
  w.end_object();
  w.end_object();
  w.end_object();
  return w.take();
}

std::string render_classify_text(const ReportConfig& cfg, const StructureReport& rep) {
  std::string out;
  write_config_text(out, cfg);
  out += "verdicts:\n";
  out += "  integrable:         " + std::string(yesno(rep.integrable)) + " (residual 0 by construction)\n";
  out += "  one_two_symplectic: " + std::string(yesno(rep.one_two_symplectic)) + " (max residual " +
         fmt_short(rep.max_one_two_symplectic) + ")\n";
  out += "  kaehler:            " + std::string(yesno(rep.kaehler)) + " (max residual " +
         fmt_short(rep.max_kaehler) + ")\n";
  out += "  cosymplectic:       " + std::string(yesno(rep.cosymplectic)) + " (max residual " +
         fmt_short(rep.max_cosymplectic) + ")\n";
  return out;
}

std::string render_map_json(const ReportConfig& cfg, const ResidualReport& rep, const MorphismVerdict& verdict) {
  JsonWriter w;
  w.begin_object();
  write_config(w, cfg);
  w.key("samples");
  w.begin_array();
  for (std::size_t s = 0; s < rep.samples.size(); ++s) {
    w.begin_object();
    w.key("point");
    write_point(w, rep.samples[s]);
    w.key("residuals");
    w.begin_object();
    w.key("antiholomorphy_defect");
    w.value(rep.per_sample[s].dbar_defect);
    w.key("holomorphy_defect");
    w.value(rep.per_sample[s].d_defect);
    w.key("pluriharmonic");
    w.value(rep.per_sample[s].pluriharmonic);
    w.key("one_one_geodesic");
    w.value(rep.per_sample[s].one_one_geodesic);
    w.key("harmonic");
    w.value(rep.per_sample[s].harmonic);
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.key("summary");
  w.begin_object();
  w.key("max_residuals");
  w.begin_object();
  w.key("antiholomorphy_defect");
  w.value(rep.max_dbar_defect);
  w.key("holomorphy_defect");
  w.value(rep.max_d_defect);
  w.key("pluriharmonic");
  w.value(rep.max_pluriharmonic);
  w.key("one_one_geodesic");
  w.value(rep.max_one_one_geodesic);
  w.key("harmonic");
  w.value(rep.max_harmonic);
  w.end_object();
  w.key("verdicts");
  w.begin_object();
  w.key("holomorphic");
  w.value(rep.holomorphic);
  w.key("antiholomorphic");
  w.value(rep.antiholomorphic);
  w.key("pluriharmonic");
  w.value(rep.pluriharmonic);
  w.key("one_one_geodesic");
  w.value(rep.one_one_geodesic);
  w.key("harmonic");
  w.value(rep.harmonic);
  w.key("morphism");
  w.value(verdict.morphism);
  w.end_object();
  w.end_object();
  w.end_object();
  return w.take();
}

std::string render_map_text(const ReportConfig& cfg, const ResidualReport& rep, const MorphismVerdict& verdict) {
  std::string out;
  write_config_text(out, cfg);
  out += "max residuals:\n";
  out += "  dbar defect (holomorphy):      " + fmt_short(rep.max_dbar_defect) + "\n";
  out += "  d defect (antiholomorphy):     " + fmt_short(rep.max_d_defect) + "\n";
  out += "  pluriharmonic:                 " + fmt_short(rep.max_pluriharmonic) + "\n";
  out += "  one_one_geodesic:              " + fmt_short(rep.max_one_one_geodesic) + "\n";
  out += "  harmonic:                      " + fmt_short(rep.max_harmonic) + "\n";
  out += "verdicts:\n";
  out += "  holomorphic:      " + std::string(yesno(rep.holomorphic)) + "\n";
  out += "  antiholomorphic:  " + std::string(yesno(rep.antiholomorphic)) + "\n";
  out += "  pluriharmonic:    " + std::string(yesno(rep.pluriharmonic)) + "\n";
  out += "  one_one_geodesic: " + std::string(yesno(rep.one_one_geodesic)) + "\n";
  out += "  harmonic:         " + std::string(yesno(rep.harmonic)) + "\n";
  out += "  morphism:         " + std::string(yesno(verdict.morphism)) + "\n";
  return out;
}

std::string render_chain_json(const ReportConfig& cfg, const ChainReport& rep) {
  JsonWriter w;
  w.begin_object();
  write_config(w, cfg);
  w.key("samples");
  w.begin_array();
  for (std::size_t s = 0; s < rep.samples.size(); ++s) {
    w.begin_object();
    w.key("point");
    write_point(w, rep.samples[s]);
    w.key("residuals");
    w.begin_object();
    w.key("chain_rule_gap");
    w.value(rep.gaps[s]);
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.key("summary");
  w.begin_object();
  w.key("max_residuals");
  w.begin_object();
  w.key("chain_rule_gap");
  w.value(rep.max_gap);
  w.end_object();
  w.key("verdicts");
  w.begin_object();
  w.key("chain_rule_identity");
  w.value(rep.pass);
  w.end_object();
  w.end_object();
  w.end_object();
  return w.take();
}

std::string render_chain_text(const ReportConfig& cfg, const ChainReport& rep) {
  std::string out;
  write_config_text(out, cfg);
  out += "max |lhs - rhs|: " + fmt_short(rep.max_gap) + "\n";
  out += "chain_rule_identity: " + std::string(yesno(rep.pass)) + "\n";
  return out;
}

std::string render_suite_json(const ReportConfig& cfg, const PaperSuiteReport& rep) {
  JsonWriter w;
  w.begin_object();
  write_config(w, cfg);
  w.key("checks");
  w.begin_array();
  for (const auto& c : rep.checks) {
    w.begin_object();
    w.key("id");
    w.value(c.id);
    w.key("description");
    w.value(c.description);
    w.key("status");
    w.value(c.pass ? "pass" : "fail");
    w.key("residuals");
    w.begin_object();
    for (const auto& [name, value] : c.residuals) {
      w.key(name);
      w.value(value);
    }
    w.end_object();
    w.key("tolerance");
    w.value(c.tolerance);
    w.end_object();
  }
  w.end_array();
  w.key("summary");
  w.begin_object();
  w.key("overall");
  w.value(rep.overall ? "pass" : "fail");
  w.end_object();
  w.end_object();
  return w.take();
}

std::string render_suite_text(const ReportConfig& cfg, const PaperSuiteReport& rep) {
  std::string out;
  write_config_text(out, cfg);
  for (const auto& c : rep.checks) {
    out += (c.pass ? "[pass] " : "[FAIL] ") + c.id + " " + c.description;
    out += " (";
    bool first = true;
    for (const auto& [name, value] : c.residuals) {
      if (!first) out += ", ";
      out += name + "=" + fmt_short(value);
      first = false;
    }
    out += ")\n";
  }
  out += std::string("overall: ") + (rep.overall ? "pass" : "fail") + "\n";
  return out;
}

}  // namespace plurigeo
