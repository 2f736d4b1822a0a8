/*
 * Copyright 2026 The csum Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "csum_cli.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "csum/csum.hpp"

namespace csum::cli {
namespace {

const std::map<std::string, EdgeMode> kEdges = {{"crop", EdgeMode::Crop},
                                                {"replicate", EdgeMode::ExtendReplicate},
                                                {"mirror", EdgeMode::ExtendMirror},
                                                {"zero", EdgeMode::ExtendZero}};
const std::map<std::string, Method> kMethods = {
    {"direct", Method::Direct}, {"separable", Method::Separable}, {"collapse", Method::Collapse}};
const std::map<std::string, ScalarMode> kScalars = {{"exact", ScalarMode::ExactInt}, {"float", ScalarMode::Float64}};

/// Raised for bad flag combinations that CLI11 cannot check on its own.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct FilterFlags {
  std::string filter = "gauss";
  std::size_t radius = 1;
  std::optional<std::size_t> collapses;
  std::optional<std::size_t> rect_rows;
  std::optional<std::size_t> rect_cols;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--filter", filter, "gauss | box | interp (needs --s) | rect (needs --a, --b)")
        ->check(CLI::IsMember({"gauss", "box", "interp", "rect"}))
        ->capture_default_str();
    cmd.add_option("--radius,-r", radius, "Kernel radius r; the kernel is (2r+1)x(2r+1)")->capture_default_str();
    cmd.add_option("--s", collapses, "Collapse count of the interp filter, 0 <= s <= 2r");
    cmd.add_option("--a", rect_rows, "Rows of the rect filter");
    cmd.add_option("--b", rect_cols, "Columns of the rect filter");
  }

  [[nodiscard]] FilterShape shape() const {
    if (filter == "gauss") return GaussianShape{radius};
    if (filter == "box") return BoxShape{radius};
    if (filter == "interp") {
      if (!collapses) throw UsageError("--filter interp requires --s");
      if (*collapses > 2 * radius) throw UsageError("--s must not exceed 2 * radius");
      return InterpShape{radius, *collapses};
    }
    if (!rect_rows || !rect_cols) throw UsageError("--filter rect requires --a and --b");
    if (*rect_rows < 1 || *rect_cols < 1) throw UsageError("--a and --b must be positive");
    return RectShape{*rect_rows, *rect_cols};
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << bytes;
  if (!out) throw UsageError("write failed for " + path);
}

std::vector<const char*> to_argv(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"csum"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return argv;
}

std::string format_kernel(const std::string& name, const Kernel<Exact>& k) {
  std::ostringstream os;
  os << "kernel " << name << ' ' << k.rows() << 'x' << k.cols() << " anchor " << k.anchor.row << ',' << k.anchor.col
     << '\n';
  os << "divisor " << k.divisor << '\n';
  for (std::size_t i = 1; i <= k.rows(); ++i) {
    for (std::size_t j = 1; j <= k.cols(); ++j) os << (j > 1 ? " " : "") << k.weights(i, j);
    os << '\n';
  }
  return os.str();
}

std::string format_kernel(const std::string& name, const Kernel<double>& k) {
  std::ostringstream os;
  os << "kernel " << name << ' ' << k.rows() << 'x' << k.cols() << " anchor " << k.anchor.row << ',' << k.anchor.col
     << '\n';
  os << "divisor 1\n";
  char buf[32];
  for (std::size_t i = 1; i <= k.rows(); ++i) {
    for (std::size_t j = 1; j <= k.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.12f", k.weights(i, j));
      os << (j > 1 ? " " : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

template <Scalar S>
EquivalenceReport verify_once(std::size_t size, std::size_t r, EdgeMode edge, std::uint32_t seed) {
  return equivalence_report(lcg_image<S>(size, size, seed), r, edge);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collapsing-sum Gaussian blur: blur images, dump kernels, verify and benchmark strategies", "csum"};
  app.require_subcommand(1);

  // blur
  auto* blur_cmd = app.add_subcommand("blur", "Blur a netpbm image (P2/P3/P5/P6)");
  FilterFlags blur_filter;
  blur_filter.add_to(*blur_cmd);
  std::string method = "collapse";
  std::string edge = "replicate";
  std::string scalar = "exact";
  std::string encoding = "auto";
  std::string in_path;
  std::string out_path;
  blur_cmd->add_option("--method", method, "direct | separable | collapse")
      ->check(CLI::IsMember({"direct", "separable", "collapse"}))
      ->capture_default_str();
  blur_cmd
      ->add_option("--edge", edge,
                   "crop | replicate | mirror | zero; mirror reflects without repeating the edge (cb|abc|ba)")
      ->check(CLI::IsMember({"crop", "replicate", "mirror", "zero"}))
      ->capture_default_str();
  blur_cmd->add_option("--scalar", scalar, "exact | float arithmetic")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  blur_cmd->add_option("--encoding", encoding, "auto (same as input) | ascii | binary")
      ->check(CLI::IsMember({"auto", "ascii", "binary"}))
      ->capture_default_str();
  blur_cmd->add_option("input", in_path, "Input netpbm file")->required();
  blur_cmd->add_option("output", out_path, "Output netpbm file")->required();

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "Print a kernel's integer weights and divisor");
  FilterFlags kernel_filter;
  kernel_filter.add_to(*kernel_cmd);
  std::optional<double> sigma;
  kernel_cmd->add_option("--sigma", sigma, "Print the sampled normal-density kernel with this standard deviation");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check that direct, separable and collapse blurs agree");
  std::size_t verify_radius = 1;
  std::size_t verify_size = 16;
  std::string verify_edge = "replicate";
  std::string verify_scalar = "exact";
  std::uint32_t verify_seed = 0x5EED;
  verify_cmd->add_option("--radius,-r", verify_radius, "Gaussian radius")->required();
  verify_cmd->add_option("--size", verify_size, "Side length of the seeded square test image")->capture_default_str();
  verify_cmd->add_option("--edge", verify_edge, "crop | replicate | mirror | zero")
      ->check(CLI::IsMember({"crop", "replicate", "mirror", "zero"}))
      ->capture_default_str();
  verify_cmd->add_option("--scalar", verify_scalar, "exact | float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "minstd_rand seed of the test image")->capture_default_str();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time the three strategies and write a CSV report");
  std::vector<std::size_t> sizes = {64, 128, 256};
  std::vector<std::size_t> radii = {1, 2, 4, 8};
  std::size_t reps = 5;
  std::string csv_path;
  std::string bench_scalar = "float";
  std::string bench_edge = "replicate";
  bench_cmd->add_option("--sizes", sizes, "Comma-separated image side lengths")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--radii", radii, "Comma-separated radii")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--reps", reps, "Repetitions per cell; the median is reported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--csv", csv_path, "Write the CSV here instead of standard output");
  bench_cmd->add_option("--scalar", bench_scalar, "exact | float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  bench_cmd->add_option("--edge", bench_edge, "crop | replicate | mirror | zero")
      ->check(CLI::IsMember({"crop", "replicate", "mirror", "zero"}))
      ->capture_default_str();

  const std::vector<const char*> argv = to_argv(args);
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (blur_cmd->parsed()) {
      const std::string bytes = read_file(in_path);
      const Image img = read_netpbm(bytes);
      const BlurRequest req{blur_filter.shape(), kMethods.at(method), kEdges.at(edge)};
      const Image result = blur_image(img, req, kScalars.at(scalar));
      NetpbmEncoding enc = NetpbmEncoding::Binary;
      if (encoding == "ascii" || (encoding == "auto" && (bytes[1] == '2' || bytes[1] == '3'))) {
        enc = NetpbmEncoding::Ascii;
      }
      write_file(out_path, write_netpbm(result, enc));
      return kExitOk;
    }

    if (kernel_cmd->parsed()) {
      if (sigma) {
        out << format_kernel("sampled", gaussian_kernel_sampled(kernel_filter.radius, *sigma));
        return kExitOk;
      }
      const FilterPlan plan = make_plan(kernel_filter.shape());
      out << format_kernel(kernel_filter.filter, plan.kernel);
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const EdgeMode e = kEdges.at(verify_edge);
      const bool exact = verify_scalar == "exact";
      const EquivalenceReport rep = exact ? verify_once<Exact>(verify_size, verify_radius, e, verify_seed)
                                          : verify_once<double>(verify_size, verify_radius, e, verify_seed);
      char dev[32];
      std::snprintf(dev, sizeof dev, "%.3g", rep.max_deviation);
      out << "radius " << verify_radius << " size " << verify_size << 'x' << verify_size << " edge " << verify_edge
          << ": deviation " << dev << (exact ? " (exact)" : " (float, tolerance 1e-09)")
          << (rep.passed ? "" : " FAILED") << '\n';
      return rep.passed ? kExitOk : kExitVerifyFailed;
    }

    if (bench_cmd->parsed()) {
      const EdgeMode e = kEdges.at(bench_edge);
      const BenchReport report = bench_scalar == "exact" ? benchmark<Exact>(sizes, radii, reps, e)
                                                         : benchmark<double>(sizes, radii, reps, e);
      err << "# " << report.header << '\n';
      if (csv_path.empty()) {
        out << report.to_csv();
      } else {
        write_file(csv_path, report.to_csv());
      }
      return report.deviations_pass() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Error& e) {
    err << "csum: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace csum::cli
