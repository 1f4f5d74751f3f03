// Copyright 2026 The Frameforecast Authors.
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

#include "frameforecast/app.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "frameforecast/cloud.h"
#include "frameforecast/corpus.h"
#include "frameforecast/errors.h"
#include "frameforecast/experiments.h"
#include "frameforecast/lexicon.h"
#include "frameforecast/run_config.h"
#include "json.hpp"

namespace frameforecast {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Context {
  RunConfig config;
  std::string fingerprint;
  std::ostream *out = nullptr;
};

std::string OutPath(const Context &ctx, const std::string &name) {
  return (fs::path(ctx.config.output_dir) / name).string();
}

FrameLexicon RequireLexicon(const RunConfig &config) {
  if (config.lexicon_path.empty()) {
    throw ValidationError("missing --lexicon");
  }
  return LoadLexicon(config.lexicon_path);
}

// Files named directly plus the *.txt files of named directories, sorted.
std::vector<std::string> ExpandRawPaths(const std::vector<std::string> &paths) {
  std::vector<std::string> files;
  for (const std::string &p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<std::string> found;
      for (const auto &entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(p, ec)) {
      files.push_back(p);
    } else {
      throw IoError("no such file or directory: " + p);
    }
  }
  return files;
}

struct LoadedCorpus {
  std::vector<Document> docs;
  std::vector<std::pair<std::string, std::string>> rejected;
};

LoadedCorpus LoadCorpus(const RunConfig &config, const FrameLexicon &lexicon) {
  if (config.corpus_paths.empty() && config.parsed_paths.empty()) {
    throw ValidationError("missing --corpus or --parsed");
  }
  LoadedCorpus corpus;
  for (const std::string &path : config.parsed_paths) {
    if (!fs::exists(path)) throw IoError("no such file: " + path);
    auto docs = ImportParsed(path, lexicon);
    std::move(docs.begin(), docs.end(), std::back_inserter(corpus.docs));
  }
  IngestOptions options;
  options.min_bytes = config.min_bytes;
  options.reject_html = config.reject_html;
  for (const std::string &file : ExpandRawPaths(config.corpus_paths)) {
    IngestResult result = IngestFile(file, lexicon, options);
    if (result.document) {
      corpus.docs.push_back(std::move(*result.document));
    } else {
      corpus.rejected.emplace_back(fs::path(file).stem().string(),
                                   result.rejection);
    }
  }
  std::sort(corpus.docs.begin(), corpus.docs.end(),
            [](const Document &a, const Document &b) { return a.id < b.id; });
  for (std::size_t i = 1; i < corpus.docs.size(); ++i) {
    if (corpus.docs[i].id == corpus.docs[i - 1].id) {
      throw ValidationError("duplicate document id \"" + corpus.docs[i].id +
                            "\"");
    }
  }
  return corpus;
}

CorpusSplit MakeSplit(const RunConfig &config, const std::vector<Document> &docs) {
  if (docs.empty()) throw ValidationError("corpus has no usable documents");
  std::vector<std::string> ids;
  for (const Document &d : docs) ids.push_back(d.id);
  return SplitCorpus(ids, config.ratios, config.split_seed);
}

ModelOptions MakeModelOptions(const RunConfig &config) {
  ModelOptions options;
  options.dae = config.dae;
  options.dae.seed = config.model_seed;
  options.ir_max_entries = config.ir_max_entries;
  options.ir_seed = config.sample_seed;
  return options;
}

std::size_t SingleBlockSize(const RunConfig &config) {
  if (config.block_sizes.empty()) throw ValidationError("missing --block");
  if (config.block_sizes.front() == 0) {
    throw ValidationError("block size must be positive");
  }
  return config.block_sizes.front();
}

struct Pipeline {
  FrameLexicon lexicon;
  LoadedCorpus corpus;
  CorpusSplit split;
};

Pipeline LoadPipeline(const RunConfig &config) {
  FrameLexicon lexicon = RequireLexicon(config);
  LoadedCorpus corpus = LoadCorpus(config, lexicon);
  CorpusSplit split = MakeSplit(config, corpus.docs);
  return {std::move(lexicon), std::move(corpus), std::move(split)};
}

PreparedData Prepare(const Context &ctx, const Pipeline &p) {
  PreparedData data =
      PrepareData(p.corpus.docs, p.split, p.lexicon.size(),
                  SingleBlockSize(ctx.config), ctx.config.window,
                  ctx.config.normalize);
  if (ctx.config.downsample_budget > 0 && !data.train.empty()) {
    data.train = DownsampleTrain(data.train, ctx.config.downsample_budget,
                                 ctx.config.sample_seed);
  }
  return data;
}

std::string SplitJson(const CorpusSplit &split, const std::string &fingerprint) {
  return json{{"fingerprint", fingerprint},
              {"train", split.train},
              {"valid", split.valid},
              {"test", split.test}}
             .dump(1) +
         "\n";
}

int CmdIngest(Context &ctx) {
  Pipeline p{RequireLexicon(ctx.config), {}, {}};
  p.corpus = LoadCorpus(ctx.config, p.lexicon);
  WriteFile(OutPath(ctx, "corpus.jsonl"),
            SerializeParsedCorpus(p.corpus.docs, p.lexicon, ctx.fingerprint));
  std::string rejected = "# fingerprint=" + ctx.fingerprint + "\nid\treason\n";
  for (const auto &[id, reason] : p.corpus.rejected) {
    rejected += id + "\t" + reason + "\n";
  }
  WriteFile(OutPath(ctx, "rejected.tsv"), rejected);
  *ctx.out << "ingest: " << p.corpus.docs.size() << " documents kept, "
           << p.corpus.rejected.size() << " rejected -> "
           << OutPath(ctx, "corpus.jsonl") << "\n";
  return kExitOk;
}

int CmdImport(Context &ctx) {
  Pipeline p = LoadPipeline(ctx.config);
  WriteFile(OutPath(ctx, "corpus.jsonl"),
            SerializeParsedCorpus(p.corpus.docs, p.lexicon, ctx.fingerprint));
  WriteFile(OutPath(ctx, "split.json"), SplitJson(p.split, ctx.fingerprint));
  *ctx.out << "import: " << p.corpus.docs.size() << " documents (train "
           << p.split.train.size() << ", valid " << p.split.valid.size()
           << ", test " << p.split.test.size() << ")\n";
  return kExitOk;
}

int CmdFitIdf(Context &ctx) {
  Pipeline p = LoadPipeline(ctx.config);
  const std::size_t block_size = SingleBlockSize(ctx.config);
  std::vector<StoryBlock> train_blocks;
  const std::set<std::string> train_ids(p.split.train.begin(),
                                        p.split.train.end());
  for (const Document &doc : p.corpus.docs) {
    if (!train_ids.count(doc.id)) continue;
    auto blocks = SegmentBlocks(doc, block_size);
    train_blocks.insert(train_blocks.end(), blocks.begin(), blocks.end());
  }
  const IdfModel idf = FitIdf(train_blocks, p.lexicon.size());
  WriteFile(OutPath(ctx, "idf.json"), SerializeIdf(idf, ctx.fingerprint));
  WriteFile(OutPath(ctx, "train_blocks.jsonl"),
            SerializeBlocks(train_blocks, ctx.fingerprint));
  WriteFile(OutPath(ctx, "split.json"), SplitJson(p.split, ctx.fingerprint));
  *ctx.out << "fit-idf: n=" << idf.n << " training blocks over "
           << idf.num_frames() << " frames at L=" << block_size << "\n";
  return kExitOk;
}

int CmdVectorize(Context &ctx) {
  Pipeline p = LoadPipeline(ctx.config);
  const PreparedData data = Prepare(ctx, p);
  if (data.train_blocks.empty()) {
    throw ValidationError("no training blocks at this block size");
  }
  std::vector<SparseRecord> records;
  for (const BlocksByDoc *part :
       {&data.train_blocks, &data.valid_blocks, &data.test_blocks}) {
    for (const auto &[id, vectors] : *part) {
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        records.push_back({id, static_cast<int>(i), vectors[i]});
      }
    }
  }
  std::sort(records.begin(), records.end(),
            [](const SparseRecord &a, const SparseRecord &b) {
              return a.doc_id != b.doc_id ? a.doc_id < b.doc_id
                                          : a.index < b.index;
            });
  WriteFile(OutPath(ctx, "idf.json"), SerializeIdf(data.idf, ctx.fingerprint));
  WriteFile(OutPath(ctx, "vectors.jsonl"),
            SerializeSparseVectors(records, ctx.fingerprint));
  *ctx.out << "vectorize: " << records.size() << " block vectors at L="
           << data.block_size << "\n";
  return kExitOk;
}

std::string PriorJson(const PriorModel &model, const std::string &fingerprint) {
  json weights = json::object();
  for (std::size_t t = 0; t < model.mean_vector.size(); ++t) {
    if (model.mean_vector.weights[t] != 0.0) {
      weights[std::to_string(t)] = model.mean_vector.weights[t];
    }
  }
  return json{{"fingerprint", fingerprint},
              {"num_frames", model.mean_vector.size()},
              {"weights", weights}}
             .dump(1) +
         "\n";
}

PriorModel ParsePriorJson(const std::string &text) {
  try {
    const json j = json::parse(text);
    PriorModel model;
    model.mean_vector = ZeroVector(j.at("num_frames").get<std::size_t>());
    for (const auto &[key, value] : j.at("weights").items()) {
      const std::size_t t = std::stoul(key);
      if (t >= model.mean_vector.size()) {
        throw ParseError("prior: frame id out of range");
      }
      model.mean_vector.weights[t] = value.get<double>();
    }
    return model;
  } catch (const json::exception &e) {
    throw ParseError(std::string("prior model: ") + e.what());
  }
}

std::string TrainLogJson(const TrainLog &log, const std::string &fingerprint) {
  json epochs = json::array();
  for (const EpochRecord &e : log.epochs) {
    epochs.push_back({{"epoch", e.epoch},
                      {"train_loss", e.train_loss},
                      {"valid_cosine", e.valid_cosine}});
  }
  return json{{"fingerprint", fingerprint},
              {"optimizer", log.optimizer},
              {"best_epoch", log.best_epoch},
              {"best_valid_cosine", log.best_valid_cosine},
              {"stop_reason", log.stop_reason},
              {"skipped_zero_targets", log.skipped_zero_targets},
              {"epochs", epochs}}
             .dump(1) +
         "\n";
}

int CmdTrain(Context &ctx) {
  Pipeline p = LoadPipeline(ctx.config);
  const PreparedData data = Prepare(ctx, p);
  if (data.train.empty()) throw ValidationError("no training instances");
  const ModelOptions options = MakeModelOptions(ctx.config);
  std::vector<std::string> saved;
  for (const std::string &name : ctx.config.models) {
    if (name == "replay") {
      continue;  // nothing to store
    } else if (name == "prior") {
      WriteFile(OutPath(ctx, "prior.json"),
                PriorJson(FitPrior(data.train), ctx.fingerprint));
      saved.push_back("prior.json");
    } else if (name == "ir") {
      SaveIrIndex(BuildIrIndex(data.train, options.ir_max_entries,
                               options.ir_seed),
                  OutPath(ctx, "ir"), ctx.fingerprint);
      saved.push_back("ir/");
    } else if (name == "dae") {
      if (data.valid.empty()) throw ValidationError("no validation instances");
      auto [params, log] = DaeTrain(ToExamples(data.train),
                                    ToExamples(data.valid), options.dae);
      SaveDae(params, options.dae, ctx.config.window, ctx.fingerprint,
              OutPath(ctx, "dae.bin"));
      WriteFile(OutPath(ctx, "dae_log.json"), TrainLogJson(log, ctx.fingerprint));
      saved.push_back("dae.bin");
    } else {
      throw ValidationError("unknown model \"" + name + "\"");
    }
  }
  *ctx.out << "train: " << data.train.size() << " instances at L="
           << data.block_size << "; saved " << saved.size() << " model(s) to "
           << ctx.config.output_dir << "\n";
  return kExitOk;
}

int CmdEvaluate(Context &ctx, const std::string &model_dir) {
  Pipeline p = LoadPipeline(ctx.config);
  const PreparedData data = Prepare(ctx, p);
  if (data.test.empty()) throw ValidationError("no test instances");
  const ModelOptions options = MakeModelOptions(ctx.config);
  std::vector<EvalResult> results;
  for (const std::string &name : ctx.config.models) {
    std::unique_ptr<Forecaster> model;
    const fs::path dir(model_dir);
    if (model_dir.empty() || name == "replay") {
      if (name != "replay" && data.train.empty()) {
        throw ValidationError("no training instances");
      }
      model = FitModel(name, data, options);
    } else if (name == "prior") {
      model = std::make_unique<PriorForecaster>(
          ParsePriorJson(ReadFile((dir / "prior.json").string())));
    } else if (name == "ir") {
      model = std::make_unique<IrForecaster>(LoadIrIndex((dir / "ir").string()));
    } else if (name == "dae") {
      model = std::make_unique<DaeForecaster>(
          LoadDae((dir / "dae.bin").string()).params);
    } else {
      throw ValidationError("unknown model \"" + name + "\"");
    }
    EvalResult r = Evaluate(*model, data.test);
    r.block_size = data.block_size;
    r.fingerprint = ctx.fingerprint;
    results.push_back(r);
  }
  std::string tsv = "# fingerprint=" + ctx.fingerprint + "\n";
  tsv += "model\tblock_size\twindow\tn_instances\tmean_cosine\n";
  json rows = json::array();
  for (const EvalResult &r : results) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", r.mean_cosine);
    tsv += r.model + "\t" + std::to_string(r.block_size) + "\t" +
           std::to_string(r.window) + "\t" + std::to_string(r.n_instances) +
           "\t" + buffer + "\n";
    rows.push_back({{"model", r.model},
                    {"block_size", r.block_size},
                    {"window", r.window},
                    {"n_instances", r.n_instances},
                    {"mean_cosine", r.mean_cosine}});
  }
  WriteFile(OutPath(ctx, "eval.tsv"), tsv);
  WriteFile(OutPath(ctx, "eval.json"),
            json{{"fingerprint", ctx.fingerprint}, {"results", rows}}.dump(1) +
                "\n");
  *ctx.out << "evaluate: " << results.size() << " model(s) on "
           << data.test.size() << " test instances";
  for (const EvalResult &r : results) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", r.mean_cosine);
    *ctx.out << " " << r.model << "=" << buffer;
  }
  *ctx.out << "\n";
  return kExitOk;
}

int CmdSweep(Context &ctx, const std::string &stem, std::size_t budget) {
  Pipeline p = LoadPipeline(ctx.config);
  SweepOptions options;
  options.block_sizes = ctx.config.block_sizes;
  options.models = ctx.config.models;
  options.window = ctx.config.window;
  options.normalize = ctx.config.normalize;
  options.model_options = MakeModelOptions(ctx.config);
  options.train_budget = budget;
  options.sample_seed = ctx.config.sample_seed;
  options.fingerprint = ctx.fingerprint;
  const SweepTable table =
      RunSweep(p.corpus.docs, p.split, p.lexicon.size(), options);
  WriteFile(OutPath(ctx, stem + ".tsv"), FormatSweepTsv(table));
  WriteFile(OutPath(ctx, stem + ".json"), FormatSweepJson(table));
  *ctx.out << stem << ": " << table.models.size() << " model(s) x "
           << table.block_sizes.size() << " block size(s) -> "
           << OutPath(ctx, stem + ".tsv") << "\n";
  return kExitOk;
}

int CmdSkip(Context &ctx) {
  Pipeline p = LoadPipeline(ctx.config);
  const PreparedData data = Prepare(ctx, p);
  const SkipCurve curve = SkipExperiment(data.test_blocks, ctx.config.max_skip);
  WriteFile(OutPath(ctx, "skip.csv"), FormatSkipCsv(curve, ctx.fingerprint));
  WriteFile(OutPath(ctx, "skip.json"),
            json{{"fingerprint", ctx.fingerprint},
                 {"block_size", data.block_size},
                 {"distances", curve.distances},
                 {"mean_cosine", curve.mean_cosine},
                 {"pairs", curve.pairs}}
                    .dump(1) +
                "\n");
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f -> %.4f", curve.mean_cosine.front(),
                curve.mean_cosine.back());
  *ctx.out << "skip-exp: L=" << data.block_size << " skips 1.."
           << ctx.config.max_skip << " mean cosine " << buffer << "\n";
  return kExitOk;
}

int CmdAblate(Context &ctx) {
  Pipeline p = LoadPipeline(ctx.config);
  const PreparedData data = Prepare(ctx, p);
  if (data.train.empty() || data.test.empty()) {
    throw ValidationError("ablation needs training and test instances");
  }
  if (ctx.config.models.empty()) throw ValidationError("missing --models");
  const auto model =
      FitModel(ctx.config.models.front(), data, MakeModelOptions(ctx.config));
  const auto frames = SampleFrames(p.lexicon.size(), ctx.config.ablate_frames,
                                   ctx.config.sample_seed);
  const AblationReport report = Ablate(*model, data.test, frames);
  WriteFile(OutPath(ctx, "ablation.tsv"),
            FormatAblationTsv(report, p.lexicon, ctx.config.ablate_rows,
                              ctx.fingerprint));
  WriteFile(OutPath(ctx, "ablation.json"),
            FormatAblationJson(report, p.lexicon, ctx.fingerprint));
  *ctx.out << "ablate: " << model->name() << " over " << frames.size()
           << " frames on " << data.test.size() << " test instances\n";
  return kExitOk;
}

int CmdCloud(Context &ctx) {
  const std::string &id = ctx.config.block_id;
  const std::size_t colon = id.rfind(':');
  if (id.empty() || colon == std::string::npos || colon == 0 ||
      colon + 1 == id.size()) {
    throw ValidationError("--block-id must look like doc:index");
  }
  const std::string doc_id = id.substr(0, colon);
  std::size_t index = 0;
  try {
    std::size_t used = 0;
    index = std::stoul(id.substr(colon + 1), &used);
    if (used != id.size() - colon - 1) throw std::invalid_argument(id);
  } catch (const std::logic_error &) {
    throw ValidationError("--block-id index is not a number: " + id);
  }
  Pipeline p = LoadPipeline(ctx.config);
  const PreparedData data = Prepare(ctx, p);
  const FrameVector *vector = nullptr;
  for (const BlocksByDoc *part :
       {&data.train_blocks, &data.valid_blocks, &data.test_blocks}) {
    auto it = part->find(doc_id);
    if (it != part->end() && index < it->second.size()) {
      vector = &it->second[index];
    }
  }
  if (vector == nullptr) throw ValidationError("no block " + id);
  CloudOptions options;
  options.top_k = ctx.config.cloud_top_k;
  options.max_lus = ctx.config.cloud_max_lus;
  const auto entries =
      SelectCloudWords(*vector, p.lexicon, ctx.config.cloud_seed, options);
  const CloudLayout layout = LayoutCloud(entries, ctx.config.canvas_w,
                                         ctx.config.canvas_h,
                                         ctx.config.cloud_seed);
  WriteFile(OutPath(ctx, "cloud.svg"), RenderSvg(layout, ctx.fingerprint));
  for (std::size_t g = 0; g < kNumCloudGroups; ++g) {
    const auto group = static_cast<CloudGroup>(g);
    WriteFile(OutPath(ctx, std::string("cloud_") + CloudGroupName(group) + ".svg"),
              RenderGroupSvg(layout, group, ctx.fingerprint));
  }
  WriteFile(OutPath(ctx, "cloud_layout.json"),
            LayoutJson(layout, ctx.fingerprint));
  *ctx.out << "cloud: " << entries.size() << " words for block " << id
           << " -> " << OutPath(ctx, "cloud.svg") << "\n";
  return kExitOk;
}

// Value of --config in argv, if any.
std::string FindConfigPath(int argc, const char *const *argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return "";
}

void AddCommonOptions(CLI::App *sub, RunConfig &c, std::string &config_path) {
  sub->add_option("--config", config_path, "Run config JSON; flags override it");
  sub->add_option("--lexicon", c.lexicon_path, "Frame lexicon JSON");
  sub->add_option("--corpus", c.corpus_paths,
                  "Raw UTF-8 text files or directories of *.txt")
      ->delimiter(',');
  sub->add_option("--parsed", c.parsed_paths, "Parsed-corpus JSONL files")
      ->delimiter(',');
  sub->add_option("--out", c.output_dir, "Output directory");
  sub->add_option("--window", c.window, "Context window w");
  sub->add_option("--models", c.models, "replay, prior, ir, dae")
      ->delimiter(',');
  sub->add_option("--split-seed", c.split_seed);
  sub->add_option("--model-seed", c.model_seed);
  sub->add_option("--sample-seed", c.sample_seed);
  sub->add_option("--cloud-seed", c.cloud_seed);
  sub->add_option("--budget", c.downsample_budget,
                  "Training-instance budget (0 keeps all)");
  sub->add_option("--min-bytes", c.min_bytes);
  sub->add_flag("--reject-html", c.reject_html);
  sub->add_option("--lr", c.dae.learning_rate);
  sub->add_option("--batch-size", c.dae.batch_size);
  sub->add_option("--dropout", c.dae.input_dropout);
  sub->add_option("--patience", c.dae.patience_epochs);
  sub->add_option("--max-epochs", c.dae.max_epochs);
  sub->add_option("--hidden", c.dae.hidden_width);
  sub->add_option("--layers-per-side", c.dae.layers_per_side);
  sub->add_option("--max-index", c.ir_max_entries, "IR index cap (0 = none)");
}

}  // namespace

int RunMain(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  RunConfig config;
  std::string config_path;
  std::vector<double> ratios;
  std::string model_dir;
  try {
    config_path = FindConfigPath(argc, argv);
    if (!config_path.empty()) {
      config = RunConfigFromJson(ReadFile(config_path));
    }
    if (config.output_dir.empty()) {
      const char *env = std::getenv("FRAMEFORECAST_OUT");
      config.output_dir = env != nullptr && *env != '\0' ? env : "out";
    }

    CLI::App app{"Semantic frame forecasting toolkit", "frameforecast"};
    app.require_subcommand(1);
    app.allow_extras(false);
    std::map<std::string, CLI::App *> subs;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"ingest", "Ingest raw books into a parsed corpus"},
        {"import", "Import a parsed-corpus JSONL file"},
        {"fit-idf", "Fit frame IDF on training blocks"},
        {"vectorize", "Write TF-IDF block vectors"},
        {"train", "Fit and save models"},
        {"evaluate", "Evaluate models on the test split"},
        {"sweep", "Block-size sweep with a DELTA row"},
        {"skip-exp", "Replay similarity against skip distance"},
        {"ablate", "Per-frame input ablation"},
        {"downsample", "Block-size sweep on a fixed training budget"},
        {"cloud", "Word clouds for one block"}};
    for (const auto &[name, help] : commands) {
      CLI::App *sub = app.add_subcommand(name, help);
      AddCommonOptions(sub, config, config_path);
      subs[name] = sub;
    }
    for (const char *name : {"fit-idf", "vectorize", "train", "evaluate",
                             "skip-exp", "ablate", "cloud"}) {
      subs[name]->add_option_function<std::size_t>(
          "--block", [&](const std::size_t &l) { config.block_sizes = {l}; },
          "Block size L");
    }
    for (const char *name : {"sweep", "downsample"}) {
      subs[name]->add_option("--blocks", config.block_sizes, "Block sizes")
          ->delimiter(',');
    }
    for (const char *name : {"import", "fit-idf", "vectorize", "train",
                             "evaluate", "sweep", "skip-exp", "ablate",
                             "downsample", "cloud"}) {
      subs[name]->add_option("--ratios", ratios, "train,valid,test")
          ->delimiter(',')
          ->expected(3);
    }
    subs["evaluate"]->add_option("--model-dir", model_dir,
                                 "Load saved models instead of fitting");
    subs["skip-exp"]->add_option("--max-skip", config.max_skip);
    subs["ablate"]->add_option("--frames", config.ablate_frames,
                               "Number of frames to sample");
    subs["ablate"]->add_option("--rows", config.ablate_rows);
    subs["cloud"]->add_option("--block-id", config.block_id, "doc:index");
    subs["cloud"]->add_option("--seed", config.cloud_seed, "Cloud seed");
    subs["cloud"]->add_option("--top-k", config.cloud_top_k);
    subs["cloud"]->add_option("--max-lus", config.cloud_max_lus);
    subs["cloud"]->add_option("--canvas-width", config.canvas_w);
    subs["cloud"]->add_option("--canvas-height", config.canvas_h);

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::ParseError &e) {
      err << "error: " << e.what() << "\n" << app.help();
      return kExitValidation;
    }
    if (!ratios.empty()) config.ratios = {ratios[0], ratios[1], ratios[2]};
    for (const auto &[name, sub] : subs) {
      if (sub->parsed()) config.subcommand = name;
    }

    Context ctx;
    ctx.config = config;
    ctx.out = &out;
    ctx.fingerprint = Fingerprint(config);
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create " + config.output_dir + ": " + ec.message());
    WriteFile(OutPath(ctx, "run_config.json"), RunConfigToJson(config));

    const std::string &cmd = config.subcommand;
    if (cmd == "ingest") return CmdIngest(ctx);
    if (cmd == "import") return CmdImport(ctx);
    if (cmd == "fit-idf") return CmdFitIdf(ctx);
    if (cmd == "vectorize") return CmdVectorize(ctx);
    if (cmd == "train") return CmdTrain(ctx);
    if (cmd == "evaluate") return CmdEvaluate(ctx, model_dir);
    if (cmd == "sweep") return CmdSweep(ctx, "sweep", config.downsample_budget);
    if (cmd == "skip-exp") return CmdSkip(ctx);
    if (cmd == "ablate") return CmdAblate(ctx);
    if (cmd == "downsample") {
      if (config.downsample_budget == 0) throw ValidationError("missing --budget");
      return CmdSweep(ctx, "downsample", config.downsample_budget);
    }
    if (cmd == "cloud") return CmdCloud(ctx);
    throw ValidationError("no subcommand");
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace frameforecast
