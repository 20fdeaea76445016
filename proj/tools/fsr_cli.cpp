// Command-line front end: sampling, reconstruction, baselines, metrics and
// density sweeps on PGM/PBM files.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fsr/fsr.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct ReconstructOptions {
  std::size_t block = 4;
  std::size_t border = 14;
  std::size_t fft = 32;
  std::size_t iters = 100;
  double rho = 0.7;
  double gamma = 0.5;
  double delta = 0.5;
  bool no_freq_weight = false;
  std::string order = "density";

  fsr::FsrParams params() const {
    fsr::FsrParams p;
    p.block_size = block;
    p.border_width = border;
    p.transform_rows = p.transform_cols = fft;
    p.iterations = iters;
    p.decay = rho;
    p.gamma = gamma;
    p.reuse = delta;
    p.frequency_weighting = !no_freq_weight;
    p.order = order == "line-scan" ? fsr::BlockOrder::line_scan : fsr::BlockOrder::density;
    return p;
  }
};

void add_fsr_options(CLI::App& cmd, ReconstructOptions& o) {
  cmd.add_option("--block", o.block, "block size")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--border", o.border, "border width")->capture_default_str();
  cmd.add_option("--fft", o.fft, "transform size (square)")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--iters", o.iters, "iterations per block")->capture_default_str();
  cmd.add_option("--rho", o.rho, "spatial weight decay")->capture_default_str();
  cmd.add_option("--gamma", o.gamma, "orthogonality deficiency compensation")->capture_default_str();
  cmd.add_option("--delta", o.delta, "weight of reconstructed pixels")->capture_default_str();
  cmd.add_flag("--no-freq-weight", o.no_freq_weight, "disable frequency weighting");
  cmd.add_option("--order", o.order, "block order")
      ->capture_default_str()
      ->check(CLI::IsMember({"density", "line-scan"}));
}

void print_params(const fsr::FsrParams& p) {
  std::cout << "block_size=" << p.block_size << '\n'
            << "border_width=" << p.border_width << '\n'
            << "transform_size=" << p.transform_rows << 'x' << p.transform_cols << '\n'
            << "iterations=" << p.iterations << '\n'
            << "rho=" << p.decay << '\n'
            << "gamma=" << p.gamma << '\n'
            << "delta=" << p.reuse << '\n'
            << "frequency_weighting=" << (p.frequency_weighting ? "on" : "off") << '\n'
            << "order=" << (p.order == fsr::BlockOrder::density ? "density" : "line-scan") << '\n';
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

fsr::GrayImage run_method(const std::string& method, const fsr::GrayImage& available, const fsr::SampleMask& mask,
                          const fsr::FsrParams& params) {
  if (method == "fsr") return fsr::reconstruct_image(available, mask, params);
  if (method == "optimized-fse") {
    fsr::FsrParams p = params;
    p.frequency_weighting = false;
    p.order = fsr::BlockOrder::line_scan;
    return fsr::reconstruct_image(available, mask, p);
  }
  if (method == "nearest") return fsr::nearest_fill(available, mask);
  if (method == "linear") return fsr::linear_interpolate(available, mask);
  if (method == "bandlimited") return fsr::band_limited_reconstruct(available, mask);
  throw fsr::ConfigError("unknown method '" + method + "'");
}

// Fills options of `cmd` that were not given on the command line from a
// key=value file. Keys are long option names without the dashes.
void apply_config(CLI::App& cmd, const std::string& path) {
  std::ifstream file(path);
  if (!file) throw fsr::DataError("cannot open config file '" + path + "'");
  for (const auto& item : CLI::ConfigINI().from_config(file)) {
    const std::string key = item.name;
    if (key == "config") continue;
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw fsr::ConfigError("unknown key '" + key + "' in config file '" + path + "'");
    }
    if (opt->count() > 0) continue;
    for (const auto& value : item.inputs) opt->add_result(value);
    opt->run_callback();
  }
}

struct SweepRow {
  double density;
  std::string method;
  double psnr_db = 0.0;
  double ssim = 0.0;
  double seconds = 0.0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency selective reconstruction of non-regularly sampled grayscale images"};
  app.require_subcommand(1);

  // sample
  std::string in, out, out_img, out_mask, mask_path;
  double density = 0.25;
  std::uint64_t seed = 1;
  bool ascii_pbm = false;
  auto* sample = app.add_subcommand("sample", "keep a random subset of pixels");
  sample->add_option("--in", in, "input PGM")->required();
  sample->add_option("--density", density, "fraction of pixels kept")->capture_default_str();
  sample->add_option("--seed", seed, "mask seed")->capture_default_str();
  sample->add_option("--out-img", out_img, "subsampled PGM (unknown pixels set to 0)")->required();
  sample->add_option("--out-mask", out_mask, "mask PBM, 1 = sample kept")->required();
  sample->add_flag("--ascii", ascii_pbm, "write plain (P1) PBM");

  // reconstruct
  ReconstructOptions ropts;
  auto* reconstruct = app.add_subcommand("reconstruct", "frequency selective reconstruction");
  reconstruct->add_option("--in", in, "subsampled PGM")->required();
  reconstruct->add_option("--mask", mask_path, "mask PBM")->required();
  reconstruct->add_option("--out", out, "output PGM")->required();
  add_fsr_options(*reconstruct, ropts);
  std::string config_path;
  reconstruct->add_option("--config", config_path, "key=value file; command-line flags take precedence");

  // baseline
  std::string method = "linear";
  std::size_t bl_iters = 100;
  auto* baseline = app.add_subcommand("baseline", "reference reconstructors");
  baseline->add_option("--method", method, "baseline")
      ->capture_default_str()
      ->check(CLI::IsMember({"nearest", "linear", "bandlimited"}));
  baseline->add_option("--in", in, "subsampled PGM")->required();
  baseline->add_option("--mask", mask_path, "mask PBM")->required();
  baseline->add_option("--out", out, "output PGM")->required();
  baseline->add_option("--iters", bl_iters, "band-limited iterations")->capture_default_str();

  // metrics
  std::string ref, test, format = "text";
  auto* metrics = app.add_subcommand("metrics", "PSNR and SSIM");
  metrics->add_option("--ref", ref, "reference PGM")->required();
  metrics->add_option("--test", test, "test PGM")->required();
  metrics->add_option("--out", format, "output format")->capture_default_str()->check(CLI::IsMember({"text", "csv"}));

  // zoneplate
  std::size_t size = 256;
  auto* zone = app.add_subcommand("zoneplate", "radial chirp test image");
  zone->add_option("--size", size, "edge length")->capture_default_str()->check(CLI::Range(2, 1 << 15));
  zone->add_option("--out", out, "output PGM")->required();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "log-magnitude spectrum of a mask, DC centred");
  spectrum->add_option("--mask", mask_path, "mask PBM")->required();
  spectrum->add_option("--out", out, "output PGM")->required();

  // sweep
  std::string densities = "0.1,0.25,0.5,0.75,0.9", methods = "fsr,linear,bandlimited";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  ReconstructOptions sopts;
  auto* sweep = app.add_subcommand("sweep", "quality over a range of densities");
  sweep->add_option("--in", in, "original PGM")->required();
  sweep->add_option("--densities", densities, "comma separated")->capture_default_str();
  sweep->add_option("--seed", seed, "mask seed")->capture_default_str();
  sweep->add_option("--methods", methods, "fsr, optimized-fse, nearest, linear, bandlimited")->capture_default_str();
  sweep->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out, "CSV report")->required();
  add_fsr_options(*sweep, sopts);
  sweep->add_option("--config", config_path, "key=value file; command-line flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (!config_path.empty()) apply_config(*reconstruct ? *reconstruct : *sweep, config_path);
    if (*sample) {
      const fsr::GrayImage img = fsr::pnm::read_pgm(in);
      const fsr::SampleMask mask = fsr::random_mask(img.width(), img.height(), density, seed);
      fsr::pnm::write_pgm(out_img, fsr::subsample(img, mask));
      fsr::pnm::write_pbm(out_mask, mask, ascii_pbm ? fsr::pnm::PbmEncoding::ascii : fsr::pnm::PbmEncoding::binary);
      std::cout << "kept " << mask.count() << " of " << mask.size() << " pixels\n";
    } else if (*reconstruct) {
      const fsr::FsrParams params = ropts.params();
      params.validate();
      print_params(params);
      const fsr::GrayImage img = fsr::pnm::read_pgm(in);
      const fsr::SampleMask mask = fsr::pnm::read_pbm(mask_path);
      fsr::pnm::write_pgm(out, fsr::reconstruct_image(img, mask, params));
    } else if (*baseline) {
      const fsr::GrayImage img = fsr::pnm::read_pgm(in);
      const fsr::SampleMask mask = fsr::pnm::read_pbm(mask_path);
      fsr::GrayImage result = method == "nearest" ? fsr::nearest_fill(img, mask)
                              : method == "linear" ? fsr::linear_interpolate(img, mask)
                                                   : fsr::band_limited_reconstruct(img, mask, bl_iters);
      fsr::pnm::write_pgm(out, result);
    } else if (*metrics) {
      const fsr::GrayImage a = fsr::pnm::read_pgm(ref);
      const fsr::GrayImage b = fsr::pnm::read_pgm(test);
      const double p = fsr::psnr(a, b);
      const double s = fsr::ssim(a, b);
      if (format == "csv") {
        std::cout << "psnr_db,ssim\n" << fixed(p, 4) << ',' << fixed(s, 6) << '\n';
      } else {
        std::cout << "PSNR " << fixed(p, 4) << " dB\nSSIM " << fixed(s, 6) << '\n';
      }
    } else if (*zone) {
      fsr::pnm::write_pgm(out, fsr::zoneplate(size));
    } else if (*spectrum) {
      const fsr::SampleMask mask = fsr::pnm::read_pbm(mask_path);
      const fsr::Spectrum2D q = fsr::mask_spectrum(mask);
      const std::size_t rows = q.rows(), cols = q.cols();
      fsr::GrayImage view(cols, rows);
      double peak = 0.0;
      for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t l = 0; l < cols; ++l) {
          const double v = std::log1p(std::abs(q(k, l)));
          view((k + rows / 2) % rows, (l + cols / 2) % cols) = v;
          peak = std::max(peak, v);
        }
      if (peak > 0.0) {
        for (auto& v : view) v *= 255.0 / peak;
      }
      fsr::pnm::write_pgm(out, view);
    } else if (*sweep) {
      const fsr::FsrParams params = sopts.params();
      params.validate();
      const fsr::GrayImage img = fsr::pnm::read_pgm(in);
      std::vector<double> dens;
      for (const auto& d : split(densities)) {
        try {
          dens.push_back(std::stod(d));
        } catch (const std::exception&) {
          throw fsr::ConfigError("bad density '" + d + "'");
        }
      }
      const auto names = split(methods);
      if (dens.empty() || names.empty()) throw fsr::ConfigError("need at least one density and one method");
      for (const auto& m : names) {
        if (m != "fsr" && m != "optimized-fse" && m != "nearest" && m != "linear" && m != "bandlimited")
          throw fsr::ConfigError("unknown method '" + m + "'");
      }
      std::vector<fsr::SampleMask> masks;
      for (double d : dens) masks.push_back(fsr::random_mask(img.width(), img.height(), d, seed));

      std::vector<SweepRow> rows;
      for (double d : dens)
        for (const auto& m : names) rows.push_back({d, m});
      std::atomic<std::size_t> next{0};
      std::vector<std::string> failures(rows.size());
      auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
          auto& row = rows[i];
          const std::size_t di = i / names.size();
          try {
            const auto available = fsr::subsample(img, masks[di]);
            const auto t0 = std::chrono::steady_clock::now();
            const auto rec = run_method(row.method, available, masks[di], params);
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            row.psnr_db = fsr::psnr(img, rec);
            row.ssim = fsr::ssim(img, rec);
          } catch (const std::exception& e) {
            failures[i] = e.what();
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < std::min<std::size_t>(threads, rows.size()); ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      for (const auto& f : failures) {
        if (!f.empty()) throw fsr::DataError(f);
      }

      std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.density != b.density ? a.density < b.density : a.method < b.method;
      });
      std::ofstream csv(out, std::ios::binary);
      if (!csv) throw fsr::DataError("cannot open '" + out + "' for writing");
      csv << "density,method,psnr_db,ssim,seconds\n";
      for (const auto& r : rows) {
        csv << fixed(r.density, 4) << ',' << r.method << ',' << fixed(r.psnr_db, 4) << ',' << fixed(r.ssim, 6) << ','
            << fixed(r.seconds, 3) << '\n';
      }
      if (!csv) throw fsr::DataError("failed writing '" + out + "'");
    }
  } catch (const fsr::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const fsr::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
