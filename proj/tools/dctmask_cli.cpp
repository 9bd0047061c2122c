// Copyright 2026 The DCT Mask Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dctmask command-line tool: evaluate, inspect, convert and benchmark mask
// representations.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dctmask/dctmask.hpp"

namespace {

using namespace dctmask;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr std::size_t kBatchSize = 1024;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntheticSource {
  std::uint64_t seed = 7;
  std::size_t count = 100;
  SizeRange sizes;
};

SyntheticSource parse_synthetic(const std::string& text, std::optional<std::uint64_t> seed_override) {
  SyntheticSource out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--synthetic: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::uint64_t number = 0;
    try {
      std::size_t used = 0;
      number = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("--synthetic: bad number '" + value + "' for " + key);
    }
    if (key == "seed") {
      out.seed = number;
    } else if (key == "count") {
      out.count = number;
    } else if (key == "min") {
      out.sizes.min = number;
    } else if (key == "max") {
      out.sizes.max = number;
    } else {
      throw UsageError("--synthetic: unknown key '" + key + "'");
    }
  }
  if (seed_override) out.seed = *seed_override;
  if (out.count == 0 || out.sizes.min == 0 || out.sizes.max < out.sizes.min) {
    throw UsageError("--synthetic: count must be positive and 0 < min <= max");
  }
  return out;
}

// Options shared by every command that reads a mask corpus.
struct CorpusOptions {
  std::string annotations;
  std::string synthetic;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> min_area;
  std::vector<std::int64_t> categories;
  bool include_crowd = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--annotations", annotations, "COCO-style instance annotation JSON");
    cmd.add_option("--synthetic", synthetic, "synthetic corpus, e.g. seed=7,count=100[,min=32,max=256]");
    cmd.add_option("--seed", seed, "seed for the synthetic corpus");
    cmd.add_option("--min-area", min_area, "skip instances with fewer mask pixels");
    cmd.add_option("--category", categories, "keep only these category ids (repeatable)");
    cmd.add_flag("--include-crowd", include_crowd, "keep iscrowd instances");
  }

  InstanceFilter filter() const {
    InstanceFilter f;
    f.min_area = min_area;
    if (!categories.empty()) f.categories = categories;
    f.include_crowd = include_crowd;
    return f;
  }
};

struct Instance {
  std::string id;
  BinaryMask mask;
};

// Uniform batch access over an annotation file or a synthetic corpus.
class Corpus {
 public:
  explicit Corpus(const CorpusOptions& opts) {
    if (opts.annotations.empty() == opts.synthetic.empty()) {
      throw UsageError("exactly one of --annotations or --synthetic is required");
    }
    if (!opts.annotations.empty()) {
      try {
        set_ = std::make_unique<AnnotationSet>(load_annotations(opts.annotations));
      } catch (const ParseError& e) {
        std::string msg = opts.annotations + ": " + e.what();
        if (e.offset() != std::string::npos) msg += " (byte " + std::to_string(e.offset()) + ")";
        throw InputError(msg);
      } catch (const IntegrityError& e) {
        throw InputError(opts.annotations + ": " + e.what());
      }
      stream_.emplace(instance_masks(*set_, opts.filter()));
      protocol_["source"] = "annotations";
      protocol_["path"] = opts.annotations;
      protocol_["crowd"] = opts.include_crowd ? "included" : "excluded";
      protocol_["min_area"] = opts.min_area ? nlohmann::json(*opts.min_area) : nlohmann::json("none");
      protocol_["categories"] = opts.categories.empty() ? nlohmann::json("all") : nlohmann::json(opts.categories);
    } else {
      synthetic_ = parse_synthetic(opts.synthetic, opts.seed);
      protocol_["source"] = "synthetic";
      protocol_["seed"] = synthetic_->seed;
      protocol_["count"] = synthetic_->count;
      protocol_["sizes"] = {synthetic_->sizes.min, synthetic_->sizes.max};
    }
    protocol_["crop"] = "tight-box";
  }

  // Next batch of at most `limit` instances; empty at the end.
  std::vector<Instance> next(std::size_t limit) {
    std::vector<Instance> out;
    if (stream_) {
      while (out.size() < limit) {
        auto crop = stream_->next();
        if (!crop) break;
        out.push_back({std::to_string(crop->annotation->id), std::move(crop->mask)});
      }
      return out;
    }
    if (!synthetic_masks_) synthetic_masks_ = generate_synthetic(synthetic_->seed, synthetic_->count, synthetic_->sizes);
    while (out.size() < limit && cursor_ < synthetic_masks_->size()) {
      out.push_back({std::to_string(cursor_), std::move((*synthetic_masks_)[cursor_])});
      ++cursor_;
    }
    return out;
  }

  nlohmann::json protocol() const {
    nlohmann::json p = protocol_;
    if (stream_) {
      p["filtered_out"] = stream_->filtered_out();
      p["skipped_empty"] = stream_->skipped_empty();
      p["dropped_polygons"] = set_->dropped_polygons;
    }
    return p;
  }

 private:
  std::unique_ptr<AnnotationSet> set_;
  std::optional<InstanceStream> stream_;
  std::optional<SyntheticSource> synthetic_;
  std::optional<std::vector<BinaryMask>> synthetic_masks_;
  std::size_t cursor_ = 0;
  nlohmann::json protocol_;
};

std::vector<BinaryMask> masks_of(std::vector<Instance>& batch) {
  std::vector<BinaryMask> out;
  out.reserve(batch.size());
  for (auto& inst : batch) out.push_back(std::move(inst.mask));
  return out;
}

std::size_t thread_count(std::optional<std::size_t> requested) {
  if (requested) {
    if (*requested == 0) throw UsageError("--threads must be positive");
    return *requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string fixed4(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string protocol_line(const nlohmann::json& protocol) {
  std::string out;
  for (const auto& [key, value] : protocol.items()) {
    if (!out.empty()) out += ' ';
    out += key + '=' + (value.is_string() ? value.get<std::string>() : value.dump());
  }
  return out;
}

// eval

struct EvalOptions {
  CorpusOptions corpus;
  std::vector<std::string> specs;
  std::string format = "table";
  std::optional<std::size_t> threads;
};

int run_eval(const EvalOptions& opts) {
  std::vector<RepresentationSpec> specs;
  for (const auto& text : opts.specs) {
    try {
      specs.push_back(parse_representation(text));
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  const std::size_t threads = thread_count(opts.threads);
  Corpus corpus(opts.corpus);
  RepresentationEvaluator evaluator(specs);
  for (auto batch = corpus.next(kBatchSize); !batch.empty(); batch = corpus.next(kBatchSize)) {
    const auto masks = masks_of(batch);
    evaluator.add_batch(masks, threads);
  }
  if (evaluator.instance_count() == 0) throw InputError("no instances left after filtering");

  nlohmann::json protocol = corpus.protocol();
  protocol["threshold"] = 0.5;
  protocol["resize"] = "bilinear-half-pixel";
  const auto reports = evaluator.reports();
  auto n_text = [](const RepresentationSpec& s) { return s.dims ? std::to_string(*s.dims) : std::string("-"); };

  if (opts.format == "csv") {
    std::cerr << "# " << protocol_line(protocol) << '\n';
    std::cout << "method,K,N,count,mean_iou\n";
    for (const auto& r : reports) {
      std::cout << to_string(r.spec.method) << ',' << r.spec.grid_size << ',' << n_text(r.spec) << ','
                << r.instance_count << ',' << fixed4(r.mean_iou) << '\n';
    }
  } else if (opts.format == "json") {
    for (const auto& r : reports) {
      nlohmann::json row;
      row["method"] = to_string(r.spec.method);
      row["K"] = r.spec.grid_size;
      row["N"] = r.spec.dims ? nlohmann::json(*r.spec.dims) : nlohmann::json(nullptr);
      row["count"] = r.instance_count;
      row["mean_iou"] = std::stod(fixed4(r.mean_iou));
      row["iou_histogram"] = r.iou_histogram;
      row["protocol"] = protocol;
      std::cout << row.dump() << '\n';
    }
  } else {
    std::cout << "# " << protocol_line(protocol) << '\n';
    std::cout << std::left << std::setw(8) << "method" << std::setw(6) << "K" << std::setw(6) << "N"
              << std::setw(9) << "count" << "mean_iou\n";
    for (const auto& r : reports) {
      std::cout << std::left << std::setw(8) << to_string(r.spec.method) << std::setw(6) << r.spec.grid_size
                << std::setw(6) << n_text(r.spec) << std::setw(9) << r.instance_count << fixed4(r.mean_iou) << '\n';
    }
  }
  return kExitOk;
}

// stats

struct StatsOptions {
  CorpusOptions corpus;
  std::size_t grid_size = 128;
  std::size_t dims = 300;
  std::string output;
  std::optional<std::size_t> threads;
};

int run_stats(const StatsOptions& opts) {
  CodecConfig config;
  config.grid_size = opts.grid_size;
  config.dims = opts.dims;
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const std::size_t threads = thread_count(opts.threads);
  Corpus corpus(opts.corpus);
  CoeffStatsAccumulator acc(config);
  for (auto batch = corpus.next(kBatchSize); !batch.empty(); batch = corpus.next(kBatchSize)) {
    const auto masks = masks_of(batch);
    acc.add_batch(masks, threads);
  }
  if (acc.instance_count() == 0) throw InputError("no instances left after filtering");
  const CoeffStats stats = acc.result();
  std::cerr << "# " << protocol_line(corpus.protocol()) << " instances=" << stats.instance_count << '\n';
  std::ostringstream csv;
  csv << "dim,mean,variance\n";
  for (std::size_t i = 0; i < stats.dims; ++i) csv << i << ',' << full(stats.mean[i]) << ',' << full(stats.variance[i]) << '\n';
  if (opts.output.empty()) {
    std::cout << csv.str();
  } else {
    write_file(opts.output, csv.str());
  }
  return kExitOk;
}

// encode / decode

template <typename Fn>
auto read_input(const std::string& path, Fn parse) {
  try {
    return parse(read_file(path));
  } catch (const ParseError& e) {
    std::string msg = path + ": " + e.what();
    if (e.offset() != std::string::npos) msg += " (byte " + std::to_string(e.offset()) + ")";
    throw InputError(msg);
  }
}

void write_output(const std::string& path, std::string_view bytes) {
  try {
    write_file(path, bytes);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
}

struct EncodeOptions {
  std::string input;
  std::string output;
  std::size_t grid_size = 128;
  std::size_t dims = 300;
};

int run_encode(const EncodeOptions& opts) {
  CodecConfig config;
  config.grid_size = opts.grid_size;
  config.dims = opts.dims;
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const BinaryMask mask = mask_from_gray(read_input(opts.input, [](const std::string& b) { return decode_pgm(b); }));
  write_output(opts.output, encode_vector_file(encode(mask, config)));
  return kExitOk;
}

struct DecodeOptions {
  std::string input;
  std::string output;
  std::size_t height = 0;
  std::size_t width = 0;
  double threshold = 0.5;
  bool soft = false;
};

int run_decode(const DecodeOptions& opts) {
  if (opts.height == 0 || opts.width == 0) throw UsageError("--height and --width must be positive");
  if (!(opts.threshold > 0.0 && opts.threshold < 1.0)) throw UsageError("--threshold must lie in (0, 1)");
  const DctMaskVector v =
      read_input(opts.input, [](const std::string& b) { return decode_vector_file(b); });
  GrayImage out;
  if (opts.soft) {
    out = gray_from_soft(decode_soft(v, opts.height, opts.width));
  } else {
    CodecConfig config;
    config.grid_size = v.grid_size();
    config.dims = v.dims();
    config.binarize_threshold = opts.threshold;
    out = gray_from_mask(decode(v, opts.height, opts.width, config));
  }
  write_output(opts.output, encode_pgm(out));
  return kExitOk;
}

// viz

struct VizOptions {
  CorpusOptions corpus;
  std::vector<std::string> ids;
  std::optional<std::size_t> index;
  std::size_t first = 0;
  std::string method = "dct";
  std::size_t grid_size = 128;
  std::size_t dims = 300;
  std::string out_dir = ".";
};

GrayImage scaled_grid(const SpatialGrid& grid) {
  const auto values = grid.values();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double span = *hi - *lo;
  GrayImage img{grid.size(), grid.size(), std::vector<std::uint8_t>(values.size(), 0)};
  if (span > 0) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      img.pixels[i] = static_cast<std::uint8_t>(std::lround((values[i] - *lo) / span * 255.0));
    }
  }
  return img;
}

int run_viz(const VizOptions& opts) {
  const int selectors = !opts.ids.empty() + opts.index.has_value() + (opts.first > 0);
  if (selectors != 1) throw UsageError("choose exactly one of --id, --index or --first");
  if (opts.method != "dct" && opts.method != "grid") throw UsageError("--method must be dct or grid");
  CodecConfig config;
  config.grid_size = opts.grid_size;
  config.dims = opts.method == "grid" ? 1 : opts.dims;
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  Corpus corpus(opts.corpus);
  std::vector<Instance> chosen;
  std::size_t position = 0;
  for (auto batch = corpus.next(kBatchSize); !batch.empty(); batch = corpus.next(kBatchSize)) {
    for (auto& inst : batch) {
      const bool take = !opts.ids.empty()  ? std::find(opts.ids.begin(), opts.ids.end(), inst.id) != opts.ids.end()
                        : opts.index     ? position == *opts.index
                                         : position < opts.first;
      ++position;
      if (take) chosen.push_back(std::move(inst));
    }
  }
  if (chosen.empty()) throw InputError("selection matched no instances");

  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) throw InputError("cannot create " + opts.out_dir + ": " + ec.message());
  const std::filesystem::path dir(opts.out_dir);
  for (const auto& inst : chosen) {
    const BinaryMask& gt = inst.mask;
    GrayImage grid_img;
    BinaryMask rec;
    if (opts.method == "grid") {
      const BinaryMask grid = grid_encode(gt, opts.grid_size);
      grid_img = gray_from_mask(grid);
      rec = grid_decode(grid, gt.height(), gt.width());
    } else {
      const DctMaskVector v = encode(gt, config);
      grid_img = scaled_grid(decode_grid(v));
      rec = decode(v, gt.height(), gt.width(), config);
    }
    write_output((dir / (inst.id + "_gt.pgm")).string(), encode_pgm(gray_from_mask(gt)));
    write_output((dir / (inst.id + "_grid.pgm")).string(), encode_pgm(grid_img));
    write_output((dir / (inst.id + "_rec.pgm")).string(), encode_pgm(gray_from_mask(rec)));
    write_output((dir / (inst.id + "_err.pgm")).string(), encode_pgm(gray_from_mask(error_map(gt, rec))));
    std::cout << inst.id << ' ' << gt.height() << 'x' << gt.width() << " iou=" << fixed4(iou(rec, gt)) << '\n';
  }
  return kExitOk;
}

// bench

struct BenchOptions {
  std::vector<std::size_t> sizes{32, 64, 128, 256};
  std::size_t dims = 300;
  std::size_t reps = 100;
};

template <typename Fn>
double median_us(std::size_t reps, Fn fn) {
  std::vector<double> samples(reps);
  for (auto& s : samples) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    s = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
  }
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(reps / 2), samples.end());
  return samples[reps / 2];
}

int run_bench(const BenchOptions& opts) {
  if (opts.reps == 0) throw UsageError("--reps must be positive");
  std::cout << "K,N,reps,naive_us,fast_us,speedup,codec_us,masks_per_s\n";
  for (std::size_t k : opts.sizes) {
    if (k == 0) throw UsageError("--k values must be positive");
    CodecConfig config;
    config.grid_size = k;
    config.dims = std::min(opts.dims, k * k);
    SpatialGrid grid(k);
    std::vector<std::uint8_t> bits(k * k);
    const double c = static_cast<double>(k) / 2;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t col = 0; col < k; ++col) {
        const double dy = (static_cast<double>(r) + 0.5 - c) / (0.4 * static_cast<double>(k));
        const double dx = (static_cast<double>(col) + 0.5 - c) / (0.3 * static_cast<double>(k));
        bits[r * k + col] = dx * dx + dy * dy <= 1.0;
        grid(r, col) = bits[r * k + col];
      }
    }
    const BinaryMask mask(k, k, std::move(bits));
    double sink = 0.0;
    const double naive = median_us(opts.reps, [&] { sink += dct2_naive(grid)(0, 0); });
    const double fast = median_us(opts.reps, [&] { sink += dct2_fast(grid)(0, 0); });
    const double codec =
        median_us(opts.reps, [&] { sink += static_cast<double>(decode(encode(mask, config), k, k, config).count()); });
    if (!std::isfinite(sink)) return kExitInternal;
    std::cout << k << ',' << config.dims << ',' << opts.reps << ',' << std::fixed << std::setprecision(3) << naive
              << ',' << fast << ',' << naive / fast << ',' << codec << ',' << std::setprecision(1) << 1e6 / codec
              << std::defaultfloat << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DCT mask representation toolkit"};
  app.set_version_flag("--version", std::string(dctmask::kVersion));
  app.require_subcommand(1);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "mean reconstruction IoU per representation");
  eval.corpus.attach(*eval_cmd);
  eval_cmd->add_option("--spec", eval.specs, "representation method:K:N, e.g. dct:128:300 or grid:28:-")->required();
  eval_cmd->add_option("--format", eval.format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
  eval_cmd->add_option("--threads", eval.threads, "worker threads");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "per-dimension mean and variance of DCT vectors (csv)");
  stats.corpus.attach(*stats_cmd);
  stats_cmd->add_option("--k", stats.grid_size, "grid size K");
  stats_cmd->add_option("--dims", stats.dims, "vector length N");
  stats_cmd->add_option("--output", stats.output, "csv path (default stdout)");
  stats_cmd->add_option("--threads", stats.threads, "worker threads");

  EncodeOptions enc;
  auto* enc_cmd = app.add_subcommand("encode", "PGM mask to DCT vector file");
  enc_cmd->add_option("--input", enc.input, "mask PGM (>= 128 is foreground)")->required();
  enc_cmd->add_option("--output", enc.output, "vector file")->required();
  enc_cmd->add_option("--k", enc.grid_size, "grid size K");
  enc_cmd->add_option("--dims", enc.dims, "vector length N");

  DecodeOptions dec;
  auto* dec_cmd = app.add_subcommand("decode", "DCT vector file to PGM mask");
  dec_cmd->add_option("--input", dec.input, "vector file")->required();
  dec_cmd->add_option("--output", dec.output, "mask PGM")->required();
  dec_cmd->add_option("--height", dec.height, "output height")->required();
  dec_cmd->add_option("--width", dec.width, "output width")->required();
  dec_cmd->add_option("--threshold", dec.threshold, "binarization threshold");
  dec_cmd->add_flag("--soft", dec.soft, "write the unthresholded mask clamped to [0, 1]");

  VizOptions viz;
  auto* viz_cmd = app.add_subcommand("viz", "ground truth, grid, reconstruction and error PGMs per instance");
  viz.corpus.attach(*viz_cmd);
  viz_cmd->add_option("--id", viz.ids, "annotation id (repeatable)");
  viz_cmd->add_option("--index", viz.index, "position in the filtered instance stream");
  viz_cmd->add_option("--first", viz.first, "first n instances of the stream");
  viz_cmd->add_option("--method", viz.method, "dct or grid");
  viz_cmd->add_option("--k", viz.grid_size, "grid size K");
  viz_cmd->add_option("--dims", viz.dims, "vector length N");
  viz_cmd->add_option("--out", viz.out_dir, "output directory");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "naive vs fast DCT and codec timings (csv)");
  bench_cmd->add_option("--k", bench.sizes, "grid sizes")->delimiter(',');
  bench_cmd->add_option("--dims", bench.dims, "vector length N");
  bench_cmd->add_option("--reps", bench.reps, "repetitions per measurement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*stats_cmd) return run_stats(stats);
    if (*enc_cmd) return run_encode(enc);
    if (*dec_cmd) return run_decode(dec);
    if (*viz_cmd) return run_viz(viz);
    if (*bench_cmd) return run_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
