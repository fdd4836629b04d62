// Command line front end; talks to the library through the C interface only.
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "hypfill.h"

namespace {

int from_code(int code) {
  switch (code) {
    case HF_OK:
      return 0;
    case HF_ERR_INVALID:
    case HF_ERR_IO:
      return 2;
    default:
      return 3;
  }
}

int report(int code) {
  if (code != HF_OK) std::fprintf(stderr, "error: %s\n", hf_last_error());
  return from_code(code);
}

struct SpaceHandle {
  hf_space* ptr = nullptr;
  ~SpaceHandle() { hf_space_free(ptr); }
};

struct FillingHandle {
  hf_filling* ptr = nullptr;
  ~FillingHandle() { hf_filling_free(ptr); }
};

struct CommonOpts {
  std::string space_path;
  std::string filling_path;
  double alpha = 3.0, tau = 3.0, p = 2.0, theta = 0.5;
  int levels = 0;
};

int open_space(const CommonOpts& o, SpaceHandle& s) {
  return hf_space_load(o.space_path.c_str(), &s.ptr);
}

int open_filling(const CommonOpts& o, const SpaceHandle& s, FillingHandle& f) {
  if (!o.filling_path.empty()) return hf_filling_load(o.filling_path.c_str(), &f.ptr);
  return hf_filling_build(s.ptr, o.alpha, o.tau, o.levels, o.p, o.theta, &f.ptr);
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_filling = true) {
  cmd->add_option("--space", o.space_path, "space JSON file")->required();
  if (with_filling) {
    cmd->add_option("--filling", o.filling_path, "filling JSONL (otherwise built in place)");
    cmd->add_option("--alpha", o.alpha, "net scale factor (> 2)");
    cmd->add_option("--tau", o.tau, "vertical edge inflation (> 2)");
    cmd->add_option("--levels", o.levels, "filling depth, 0 = auto");
  }
  cmd->add_option("--p", o.p, "energy exponent (> 1)");
  cmd->add_option("--theta", o.theta, "smoothness parameter in (0, 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet problems on uniformized hyperbolic fillings"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "reserved; all computations are deterministic");

  // generate
  auto* gen = app.add_subcommand("generate", "write a built-in example space");
  std::string gen_name, gen_out;
  int gen_depth = 3;
  double gen_sigma = 0.5;
  bool no_rescale = false;
  gen->add_option("--name", gen_name, "interval|square|carpet_minus_edge|koch_rug|pentagasket_minus_arc")->required();
  gen->add_option("--depth", gen_depth, "recursion depth");
  gen->add_option("--sigma", gen_sigma, "boundary codimension (interval only)");
  gen->add_flag("--no-rescale", no_rescale, "keep the native diameter");
  gen->add_option("--out", gen_out, "output space JSON")->required();

  // build
  auto* bld = app.add_subcommand("build", "build and save a uniformized filling");
  CommonOpts bo;
  std::string bld_out;
  add_common(bld, bo);
  bld->add_option("--out", bld_out, "output filling JSONL")->required();

  // solve
  auto* slv = app.add_subcommand("solve", "solve the inhomogeneous Dirichlet problem");
  CommonOpts so;
  std::string so_f, so_g, so_out, so_diag, so_method = "auto";
  double so_band = 0.0, so_tol = 1e-9;
  std::uint32_t so_iter = 20000;
  add_common(slv, so);
  slv->add_option("--f", so_f, "boundary data CSV")->required();
  slv->add_option("--g", so_g, "source density CSV (omit for homogeneous)");
  slv->add_option("--band", so_band, "boundary pinning width, 0 = auto");
  slv->add_option("--tol", so_tol, "solver tolerance");
  slv->add_option("--max-iter", so_iter, "iteration budget");
  slv->add_option("--method", so_method, "auto|cg|irls|gd");
  slv->add_option("--out", so_out, "solution CSV (per filling vertex)")->required();
  slv->add_option("--diag", so_diag, "diagnostics JSON");

  // trace
  auto* trc = app.add_subcommand("trace", "trace a vertex solution to the interior samples");
  CommonOpts to;
  std::string trc_sol, trc_out;
  add_common(trc, to);
  trc->add_option("--solution", trc_sol, "solution CSV")->required();
  trc->add_option("--out", trc_out, "trace CSV (per interior sample)")->required();

  // capacity / wiener
  auto* cap = app.add_subcommand("capacity", "capacity scaling at boundary centers");
  auto* wnr = app.add_subcommand("wiener", "capacity ratios entering the Wiener sum");
  CommonOpts co, wo;
  std::string cap_out, cap_sum, wnr_out, wnr_sum;
  int cap_center = -1, wnr_center = -1;
  add_common(cap, co);
  cap->add_option("--center", cap_center, "boundary sample id, -1 = three spread centers");
  cap->add_option("--out", cap_out, "per-radius CSV")->required();
  cap->add_option("--summary", cap_sum, "fitted slopes JSON");
  add_common(wnr, wo);
  wnr->add_option("--center", wnr_center, "boundary sample id, -1 = three spread centers");
  wnr->add_option("--out", wnr_out, "per-radius CSV")->required();
  wnr->add_option("--summary", wnr_sum, "fitted slopes JSON");

  // kellogg
  auto* klg = app.add_subcommand("kellogg", "boundary convergence over filling depths");
  CommonOpts ko;
  std::string klg_f, klg_depths = "3,4,5", klg_out;
  double klg_band = 0.0, klg_tol = 1e-10;
  add_common(klg, ko, false);
  klg->add_option("--alpha", ko.alpha, "net scale factor (> 2)");
  klg->add_option("--tau", ko.tau, "vertical edge inflation (> 2)");
  klg->add_option("--f", klg_f, "boundary data CSV")->required();
  klg->add_option("--depths", klg_depths, "comma separated depth list");
  klg->add_option("--band", klg_band, "boundary pinning width, 0 = auto");
  klg->add_option("--tol", klg_tol, "solver tolerance");
  klg->add_option("--out", klg_out, "report JSON")->required();

  // holder
  auto* hld = app.add_subcommand("holder", "interior modulus-of-continuity fit");
  CommonOpts ho;
  std::string hld_f, hld_g, hld_out;
  double hld_q = 8.0, hld_band = 0.0;
  add_common(hld, ho);
  hld->add_option("--f", hld_f, "boundary data CSV")->required();
  hld->add_option("--g", hld_g, "source density CSV");
  hld->add_option("--q", hld_q, "integrability exponent of the source");
  hld->add_option("--band", hld_band, "boundary pinning width, 0 = auto");
  hld->add_option("--out", hld_out, "report JSON")->required();

  // check
  auto* chk = app.add_subcommand("check", "run a property-check suite");
  std::string chk_suite = "all", chk_out;
  chk->add_option("--suite", chk_suite, std::string("one of: ") + hf_suite_names());
  chk->add_option("--out", chk_out, "report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*gen) {
    SpaceHandle s;
    int rc = hf_space_generate(gen_name.c_str(), gen_depth, gen_sigma, no_rescale ? 0 : 1, &s.ptr);
    if (rc == HF_OK) rc = hf_space_save(s.ptr, gen_out.c_str());
    return report(rc);
  }
  if (*bld) {
    SpaceHandle s;
    FillingHandle f;
    int rc = open_space(bo, s);
    if (rc == HF_OK) rc = open_filling(bo, s, f);
    if (rc == HF_OK) rc = hf_filling_save(f.ptr, bld_out.c_str());
    return report(rc);
  }
  if (*slv) {
    SpaceHandle s;
    FillingHandle f;
    int rc = open_space(so, s);
    if (rc == HF_OK) rc = open_filling(so, s, f);
    if (rc == HF_OK)
      rc = hf_solve(s.ptr, f.ptr, so.p, so.theta, so_band, so_f.c_str(),
                    so_g.empty() ? nullptr : so_g.c_str(), so_tol, so_iter, so_method.c_str(),
                    so_out.c_str(), so_diag.empty() ? nullptr : so_diag.c_str());
    return report(rc);
  }
  if (*trc) {
    SpaceHandle s;
    FillingHandle f;
    int rc = open_space(to, s);
    if (rc == HF_OK) rc = open_filling(to, s, f);
    if (rc == HF_OK) rc = hf_trace(s.ptr, f.ptr, trc_sol.c_str(), trc_out.c_str());
    return report(rc);
  }
  if (*cap || *wnr) {
    const CommonOpts& o = *cap ? co : wo;
    const std::string& out = *cap ? cap_out : wnr_out;
    const std::string& sum = *cap ? cap_sum : wnr_sum;
    int center = *cap ? cap_center : wnr_center;
    SpaceHandle s;
    FillingHandle f;
    int rc = open_space(o, s);
    if (rc == HF_OK) rc = open_filling(o, s, f);
    if (rc == HF_OK)
      rc = hf_capacity_report(s.ptr, f.ptr, o.p, o.theta, center, out.c_str(),
                              sum.empty() ? nullptr : sum.c_str());
    return report(rc);
  }
  if (*klg) {
    SpaceHandle s;
    int rc = open_space(ko, s);
    if (rc == HF_OK)
      rc = hf_kellogg_report(s.ptr, klg_f.c_str(), ko.alpha, ko.tau, klg_depths.c_str(), ko.p,
                             ko.theta, klg_band, klg_tol, klg_out.c_str());
    return report(rc);
  }
  if (*hld) {
    SpaceHandle s;
    FillingHandle f;
    int rc = open_space(ho, s);
    if (rc == HF_OK) rc = open_filling(ho, s, f);
    if (rc == HF_OK)
      rc = hf_holder_report(s.ptr, f.ptr, ho.p, ho.theta, hld_q, hld_band, hld_f.c_str(),
                            hld_g.empty() ? nullptr : hld_g.c_str(), hld_out.c_str());
    return report(rc);
  }
  if (*chk) {
    int rc = hf_run_suite(chk_suite.c_str(), chk_out.empty() ? nullptr : chk_out.c_str());
    if (rc == HF_ERR_NUMERIC) {
      std::fprintf(stderr, "check failed: %s\n", hf_last_error());
      return 1;
    }
    return report(rc);
  }
  return 2;
}
