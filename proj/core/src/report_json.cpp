#include "embolic/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "embolic/errors.hpp"

namespace embolic {

namespace {

void append_string(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch) & 0xff);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void append_real(std::string& out, double v) {
  if (!std::isfinite(v)) throw InternalError("report: nonfinite real value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

class ReportWriter {
 public:
  void add(const char* k, const std::string& v) {
    key(k);
    append_string(out_, v);
  }
  void add(const char* k, long long v) {
    key(k);
    out_ += std::to_string(v);
  }
  void add(const char* k, int v) { add(k, static_cast<long long>(v)); }
  void add(const char* k, bool v) {
    key(k);
    out_ += v ? "true" : "false";
  }
  void add(const char* k, double v) {
    key(k);
    append_real(out_, v);
  }
  void add(const char* k, const std::vector<long long>& v) {
    key(k);
    out_ += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out_ += ", ";
      out_ += std::to_string(v[i]);
    }
    out_ += ']';
  }
  void add(const char* k, const std::vector<double>& v) {
    key(k);
    out_ += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out_ += ", ";
      append_real(out_, v[i]);
    }
    out_ += ']';
  }
  void add(const char* k, const std::vector<bool>& v) {
    key(k);
    out_ += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out_ += ", ";
      out_ += v[i] ? "true" : "false";
    }
    out_ += ']';
  }
  void add_packing(const char* k, const std::vector<PackingEntry>& v) {
    key(k);
    if (v.empty()) {
      out_ += "[]";
      return;
    }
    out_ += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out_ += "    {\"center\": ";
      out_ += std::to_string(v[i].center);
      out_ += ", \"radius\": ";
      append_real(out_, v[i].radius);
      out_ += ", \"scale_index\": ";
      out_ += std::to_string(v[i].scale_index);
      out_ += ", \"vol_R\": ";
      append_real(out_, v[i].vol_R);
      out_ += ", \"vol_5R\": ";
      append_real(out_, v[i].vol_5R);
      out_ += '}';
      if (i + 1 < v.size()) out_ += ',';
      out_ += '\n';
    }
    out_ += "  ]";
  }
  std::string finish() {
    std::string s = "{\n";
    s += out_;
    s += "\n}\n";
    return s;
  }

 private:
  std::string out_;
  bool first_ = true;

  void key(const char* k) {
    if (!first_) out_ += ",\n";
    first_ = false;
    out_ += "  \"";
    out_ += k;
    out_ += "\": ";
  }
};

}  // namespace

std::string report_to_json(const BoundReport& r) {
  ReportWriter w;
  w.add("input", r.input);
  w.add("m", r.m);
  w.add("n", r.n);
  w.add("inj", r.inj);
  w.add("vol", r.vol);
  w.add("p", r.p);
  w.add("dmax", r.dmax);
  w.add("multiplicity_cap", r.multiplicity_cap);
  w.add("r0_policy", r.r0_policy);
  w.add("R0", r.R0);
  w.add("theta_policy", r.theta_policy);
  w.add("theta", r.theta);
  w.add("theta_clamped", r.theta_clamped);
  w.add("alpha", r.alpha);
  w.add("beta_n", r.beta_n);
  w.add("beta_n_provenance", r.beta_n_provenance);
  w.add("r_floor", r.r_floor);
  w.add("rho", r.rho);
  w.add("rho_hat", r.rho_hat);
  w.add("N", r.N);
  w.add("k_max_scale", r.k_max_scale);
  w.add("T", r.T);
  w.add("T_center_distance", r.T_center_distance);
  w.add("max_multiplicity", r.max_multiplicity);
  w.add("t", r.t);
  w.add("b", r.b);
  w.add("truth", r.truth);
  w.add("has_truth", r.has_truth);
  w.add("betti_match_ok", r.betti_match_ok);
  w.add("bound_T", r.bound_T);
  w.add("bound_tk", r.bound_tk);
  w.add("bound_clamped", r.bound_clamped);
  w.add("Cn", r.Cn);
  w.add("Cnprime", r.Cnprime);
  w.add("Dn", r.Dn);
  w.add("Dnprime", r.Dnprime);
  w.add("Cn_clamped", r.Cn_clamped);
  w.add("packing_radii_sorted_ok", r.packing_radii_sorted_ok);
  w.add("packing_disjoint_ok", r.packing_disjoint_ok);
  w.add("packing_coverage_ok", r.packing_coverage_ok);
  w.add("five_ball_ok", r.five_ball_ok);
  w.add("five_ball_paper_form_ok", r.five_ball_paper_form_ok);
  w.add("five_ball_neighbors_disjoint_ok", r.five_ball_neighbors_disjoint_ok);
  w.add("chain_a_ok", r.chain_a_ok);
  w.add("chain_a_equality", r.chain_a_equality);
  w.add("chain_b_ok", r.chain_b_ok);
  w.add("chain_c_ok", r.chain_c_ok);
  w.add("chain_d_ok", r.chain_d_ok);
  w.add("chain_d_below_floor", r.chain_d_below_floor);
  w.add("chain_e_ok", r.chain_e_ok);
  w.add("scale_bound_ok", r.scale_bound_ok);
  w.add("scale_bound_boundary", r.scale_bound_boundary);
  w.add("t1_equals_T", r.t1_equals_T);
  w.add("main_inequality_ok", r.main_inequality_ok);
  w.add("main_inequality_skipped", r.main_inequality_skipped);
  w.add("theorem11_literal_rhs", r.theorem11_literal_rhs);
  w.add("bk_le_tk_ok", r.bk_le_tk_ok);
  w.add("tk_le_bound_ok", r.tk_le_bound_ok);
  w.add("claim_t0_le_2t1", r.claim_t0_le_2t1);
  w.add("claim_t0_le_2t1_na", r.claim_t0_le_2t1_na);
  w.add("claim_ti_le_t1", r.claim_ti_le_t1);
  w.add("mandatory_ok", r.mandatory_ok);
  w.add_packing("packing", r.packing);
  return w.finish();
}

void write_report(const BoundReport& report, const std::string& path) {
  const std::string body = report_to_json(report);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("report: cannot open '" + path + "' for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw ValidationError("report: write failed for '" + path + "'");
}

}  // namespace embolic
