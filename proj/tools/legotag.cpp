// legotag: train, tag, evaluate and inspect DBN part-of-speech taggers.
//
// Exit codes: 0 success, 2 usage/argument, 3 corpus or vocabulary parse,
// 4 training, 5 model file, 6 decode, 7 I/O.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "legotag/legotag.hpp"

namespace lt = legotag;

namespace {

enum class DecodeMode { viterbi, posterior };

struct RunConfig {
  std::string corpus_path;
  std::string input_path;
  std::string output_path;
  std::string model_path;
  std::string format = "slash";
  std::string decode = "viterbi";
  std::string lexicon = "full";
  std::string affixes = "full";
  std::string preset;
  std::string tagset_path;
  std::string vocab_name;
  std::string table_name;
  std::string row_spec;
  lt::FeatureConfig features;
  int clusters = 0;  // 0 = full memory
  double lambda = 0.1;
  int jobs = 1;
  int top_confusions = 0;
  unsigned seed = 0;  // reserved for randomized harnesses; the pipeline is deterministic
};

lt::CorpusFormat parse_format(const std::string& s) {
  if (s == "slash") return lt::CorpusFormat::slash;
  if (s == "tsv") return lt::CorpusFormat::tsv;
  throw lt::ArgumentError("unknown format '" + s + "' (expected slash or tsv)");
}

DecodeMode parse_decode(const std::string& s) {
  if (s == "viterbi") return DecodeMode::viterbi;
  if (s == "posterior") return DecodeMode::posterior;
  throw lt::ArgumentError("unknown decode mode '" + s + "' (expected viterbi or posterior)");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lt::IoError("cannot read '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw lt::IoError("cannot write '" + path + "'");
  return out;
}

lt::Corpus read_corpus_file(const std::string& path, lt::CorpusFormat format,
                            lt::CorpusMode mode) {
  auto in = open_input(path);
  return lt::read_corpus(in, format, mode);
}

lt::Vocabulary load_vocabulary_file(const std::string& path) {
  auto in = open_input(path);
  return lt::load_vocabulary(in);
}

// "full" | "none" | "file:PATH"
void apply_lexicon_flag(RunConfig& rc) {
  if (rc.lexicon == "full") {
    rc.features.lexicon_mode = lt::VocabMode::full;
  } else if (rc.lexicon == "none") {
    rc.features.lexicon_mode = lt::VocabMode::none;
  } else if (rc.lexicon.rfind("file:", 0) == 0) {
    rc.features.lexicon_mode = lt::VocabMode::file;
    rc.features.word_file = rc.lexicon.substr(5);
    if (rc.features.word_file.empty())
      throw lt::ArgumentError("--lexicon file: needs a path");
  } else {
    throw lt::ArgumentError("--lexicon expects full, none or file:PATH");
  }
}

// "full" | "none" | "file:PFX,SFX"
void apply_affix_flag(RunConfig& rc) {
  if (rc.affixes == "full") {
    rc.features.affix_mode = lt::VocabMode::full;
  } else if (rc.affixes == "none") {
    rc.features.affix_mode = lt::VocabMode::none;
  } else if (rc.affixes.rfind("file:", 0) == 0) {
    rc.features.affix_mode = lt::VocabMode::file;
    const std::string paths = rc.affixes.substr(5);
    const std::size_t comma = paths.find(',');
    if (comma == std::string::npos)
      throw lt::ArgumentError("--affixes file: needs two paths, file:PFX,SFX");
    rc.features.prefix_file = paths.substr(0, comma);
    rc.features.suffix_file = paths.substr(comma + 1);
    if (rc.features.prefix_file.empty() || rc.features.suffix_file.empty())
      throw lt::ArgumentError("--affixes file: needs two paths, file:PFX,SFX");
  } else {
    throw lt::ArgumentError("--affixes expects full, none or file:PFX,SFX");
  }
}

// Experiment presets; explicitly given flags win over the preset.
void apply_preset(RunConfig& rc, const CLI::App* sub) {
  const bool k_set = sub->count("--K") > 0;
  const bool fact_set = sub->count("--factored") > 0 || sub->count("--unfactored") > 0;
  const bool lex_set = sub->count("--lexicon") > 0;
  const bool aff_set = sub->count("--affixes") > 0;
  auto want = [&](int k, bool factored, const char* lex, const char* aff) {
    if (!k_set) rc.clusters = k;
    if (!fact_set) rc.features.factored = factored;
    if (!lex_set) rc.lexicon = lex;
    if (!aff_set) rc.affixes = aff;
  };
  if (rc.preset == "full-factored") want(0, true, "full", "full");
  else if (rc.preset == "full-unfactored") want(0, false, "full", "full");
  else if (rc.preset == "clustered-factored") want(5, true, "full", "full");
  else if (rc.preset == "clustered-unfactored") want(5, false, "full", "full");
  else if (rc.preset == "delex") want(0, true, "none", "full");
  else if (rc.preset == "smart") want(0, true, "file", "file");
  else if (rc.preset == "hybrid-big-lexicon") want(0, true, "full", "file");
  else if (rc.preset == "hybrid-small-lexicon") want(0, true, "file", "full");
  else throw lt::ArgumentError("unknown preset '" + rc.preset + "'");
  if (rc.lexicon == "file")
    throw lt::ArgumentError("preset '" + rc.preset + "' needs --lexicon file:PATH");
  if (rc.affixes == "file")
    throw lt::ArgumentError("preset '" + rc.preset + "' needs --affixes file:PFX,SFX");
}

std::vector<std::vector<int>> decode_corpus(const lt::LegoModel& model, const lt::Corpus& corpus,
                                            DecodeMode mode, int jobs) {
  std::vector<std::vector<int>> out(corpus.sentences.size());
  lt::parallel_for(corpus.sentences.size(), jobs, [&](std::size_t i) {
    const auto feats = model.extract_sentence(corpus.sentences[i]);
    out[i] = mode == DecodeMode::viterbi
                 ? lt::viterbi(model, feats).tags
                 : lt::posterior_decode(lt::forward_backward(model, feats));
  });
  return out;
}

int cmd_train(RunConfig& rc, const CLI::App* sub) {
  if (!rc.preset.empty()) apply_preset(rc, sub);
  apply_lexicon_flag(rc);
  apply_affix_flag(rc);
  const auto format = parse_format(rc.format);
  const lt::Corpus corpus = read_corpus_file(rc.corpus_path, format, lt::CorpusMode::tagged);
  if (corpus.empty()) throw lt::ArgumentError("empty corpus: " + rc.corpus_path);

  if (!rc.tagset_path.empty()) {
    auto in = open_input(rc.tagset_path);
    std::set<std::string> known;
    std::string line;
    while (std::getline(in, line)) {
      std::string_view t = lt::trim(line);
      if (!t.empty() && t.front() != '#') known.insert(std::string(t));
    }
    std::string offenders;
    for (const auto& tag : corpus.tagset)
      if (!known.count(tag)) offenders += offenders.empty() ? tag : ", " + tag;
    if (!offenders.empty())
      throw lt::TrainError("corpus tags not in " + rc.tagset_path + ": " + offenders);
  }

  lt::VocabularySet vocabs;
  if (rc.features.lexicon_mode == lt::VocabMode::full ||
      rc.features.affix_mode == lt::VocabMode::full)
    vocabs = lt::build_vocabularies(corpus, rc.features);
  if (rc.features.lexicon_mode == lt::VocabMode::file)
    vocabs.word = load_vocabulary_file(rc.features.word_file);
  else if (rc.features.lexicon_mode == lt::VocabMode::none)
    vocabs.word = lt::Vocabulary();
  if (rc.features.affix_mode == lt::VocabMode::file) {
    vocabs.prefix = load_vocabulary_file(rc.features.prefix_file);
    vocabs.suffix = load_vocabulary_file(rc.features.suffix_file);
  } else if (rc.features.affix_mode == lt::VocabMode::none) {
    vocabs.prefix = lt::Vocabulary();
    vocabs.suffix = lt::Vocabulary();
  }

  lt::LegoModel model;
  if (rc.clusters > 0) {
    model = lt::recluster_pipeline(corpus, vocabs, rc.features, rc.clusters, rc.lambda, rc.jobs);
  } else {
    const lt::TagSet tagset = lt::TagSet::from_corpus(corpus);
    model = lt::train(corpus, tagset, lt::MemoryDomain::full(tagset), vocabs, rc.features,
                      rc.lambda, rc.jobs);
  }

  auto out = open_output(rc.model_path);
  lt::save_model(model, out);
  if (!out) throw lt::IoError("failed writing '" + rc.model_path + "'");

  std::cout << "tags=" << model.tagset.size() << " memory=" << model.memory.size()
            << (model.memory.is_identity() ? " (full)" : " (clustered)")
            << " words=" << model.vocabs.word.num_entries()
            << " prefixes=" << model.vocabs.prefix.num_entries()
            << " suffixes=" << model.vocabs.suffix.num_entries() << '\n'
            << "wrote " << rc.model_path << '\n';
  return 0;
}

int cmd_tag(RunConfig& rc) {
  const auto format = parse_format(rc.format);
  const auto mode = parse_decode(rc.decode);
  lt::LegoModel model;
  {
    auto in = open_input(rc.model_path);
    model = lt::load_model(in);
  }
  const lt::Corpus input = read_corpus_file(rc.input_path, format, lt::CorpusMode::raw);
  const auto predicted = decode_corpus(model, input, mode, rc.jobs);

  std::vector<std::vector<std::string>> names(predicted.size());
  for (std::size_t s = 0; s < predicted.size(); ++s)
    for (int t : predicted[s]) names[s].push_back(model.tagset.name(t));

  if (rc.output_path.empty()) {
    lt::write_tagged(input.sentences, names, std::cout, format);
  } else {
    auto out = open_output(rc.output_path);
    lt::write_tagged(input.sentences, names, out, format);
    if (!out) throw lt::IoError("failed writing '" + rc.output_path + "'");
  }
  return 0;
}

int cmd_eval(RunConfig& rc) {
  const auto format = parse_format(rc.format);
  const auto mode = parse_decode(rc.decode);
  lt::LegoModel model;
  {
    auto in = open_input(rc.model_path);
    model = lt::load_model(in);
  }
  const lt::Corpus gold = read_corpus_file(rc.corpus_path, format, lt::CorpusMode::tagged);
  if (gold.empty()) throw lt::ArgumentError("empty corpus: " + rc.corpus_path);

  std::string offenders;
  for (const auto& tag : gold.tagset)
    if (model.tagset.id(tag) < 0) offenders += offenders.empty() ? tag : ", " + tag;
  if (!offenders.empty())
    throw lt::ArgumentError("corpus tags unknown to the model: " + offenders);

  const auto predicted = decode_corpus(model, gold, mode, rc.jobs);
  const lt::EvalReport report =
      lt::evaluate(gold, predicted, model.tagset, model.vocabs.word);
  lt::render_report(report, std::cout);
  if (rc.top_confusions > 0) {
    std::cout << "top confusions (gold -> predicted):\n";
    for (const auto& cell : lt::top_confusions(report, rc.top_confusions)) {
      char share[16];
      std::snprintf(share, sizeof share, "%.1f", cell.share * 100.0);
      std::cout << "  " << model.tagset.name(cell.gold) << " -> "
                << model.tagset.name(cell.predicted) << "  " << cell.count << " (" << share
                << "% of errors)\n";
    }
  }
  return 0;
}

int resolve_memory_label(const lt::LegoModel& model, const std::string& label) {
  if (label == "start" || label == "<start>") return model.memory.start_id();
  for (int m = 0; m < model.memory.size(); ++m)
    if (model.memory.labels[static_cast<std::size_t>(m)] == label) return m;
  throw lt::ArgumentError("unknown memory value '" + label + "'");
}

void dump_row(const lt::LegoModel& model, const std::string& table_name,
              const std::string& row_spec) {
  const lt::Cpt* table = lt::table_by_name(model, table_name);
  if (!table) throw lt::ArgumentError("unknown table '" + table_name + "'");

  std::size_t row = 0;
  if (table_name == "INITIAL") {
    row = 0;
  } else if (table_name == "TRANS" || table_name == "MEMTRANS") {
    const std::size_t comma = row_spec.find(',');
    if (comma == std::string::npos)
      throw lt::ArgumentError("--row for " + table_name + " expects TAG,MEMORY");
    const int t = model.tagset.id(row_spec.substr(0, comma));
    if (t < 0) throw lt::ArgumentError("unknown tag '" + row_spec.substr(0, comma) + "'");
    row = model.transition_row(t, resolve_memory_label(model, row_spec.substr(comma + 1)));
  } else {
    const int t = model.tagset.id(row_spec);
    if (t < 0) throw lt::ArgumentError("unknown tag '" + row_spec + "'");
    row = static_cast<std::size_t>(t);
  }

  auto child_label = [&](std::size_t c) -> std::string {
    if (table_name == "INITIAL" || table_name == "TRANS")
      return model.tagset.name(static_cast<int>(c));
    if (table_name == "MEMTRANS") return model.memory.labels[c];
    if (table_name == "WORD") return model.vocabs.word.name(static_cast<int>(c));
    if (table_name == "PREFIX") return model.vocabs.prefix.name(static_cast<int>(c));
    if (table_name == "SUFFIX") return model.vocabs.suffix.name(static_cast<int>(c));
    return c ? "true" : "false";
  };

  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", table->prob_row_sum(row));
  std::cout << "table=" << table_name << " row=" << (table_name == "INITIAL" ? "-" : row_spec)
            << " row_sum=" << buf << '\n';
  // Wide rows (the vocabulary tables) print their top 20 entries only.
  std::vector<std::size_t> cols(table->cols());
  for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = c;
  if (table->cols() > 64) {
    std::sort(cols.begin(), cols.end(), [&](std::size_t a, std::size_t b) {
      if (table->p(row, a) != table->p(row, b)) return table->p(row, a) > table->p(row, b);
      return a < b;
    });
    cols.resize(20);
  }
  for (std::size_t c : cols) {
    std::snprintf(buf, sizeof buf, "%.12g", table->p(row, c));
    std::cout << "  " << child_label(c) << '\t' << buf << '\n';
  }
}

int cmd_inspect(RunConfig& rc) {
  lt::LegoModel model;
  {
    auto in = open_input(rc.model_path);
    model = lt::load_model(in);
  }

  if (!rc.vocab_name.empty()) {
    const lt::Vocabulary* v = rc.vocab_name == "word"     ? &model.vocabs.word
                              : rc.vocab_name == "prefix" ? &model.vocabs.prefix
                              : rc.vocab_name == "suffix" ? &model.vocabs.suffix
                                                          : nullptr;
    if (!v) throw lt::ArgumentError("unknown vocabulary '" + rc.vocab_name + "'");
    lt::dump_vocabulary(*v, std::cout);
    return 0;
  }
  if (!rc.table_name.empty()) {
    dump_row(model, rc.table_name, rc.row_spec);
    return 0;
  }

  std::cout << "legotag model " << lt::kModelVersion << '\n';
  std::cout << "tags: " << model.tagset.size() << '\n';
  std::cout << "lambda: " << model.lambda << '\n';
  std::cout << "factored: " << (model.config.factored ? "yes" : "no") << '\n';
  std::cout << "vocabulary sizes: word=" << model.vocabs.word.num_entries()
            << " prefix=" << model.vocabs.prefix.num_entries()
            << " suffix=" << model.vocabs.suffix.num_entries() << '\n';
  std::cout << "MEMORY " << (model.memory.is_identity() ? "full " : "clustered ")
            << model.memory.size() << " values";
  if (!model.memory.is_identity()) {
    std::cout << " (" << model.memory.num_clusters << " clusters + <start>)\n";
    for (int t = 0; t < model.tagset.size(); ++t)
      std::cout << "  " << model.tagset.name(t) << '\t'
                << model.memory.projection[static_cast<std::size_t>(t)] << '\n';
  } else {
    std::cout << " (one per tag + <start>)\n";
  }
  std::cout << "tables:\n";
  const char* names[] = {"INITIAL", "WORD",   "PREFIX", "SUFFIX",  "CAP",
                         "HYPHEN",  "NUMBER", "TRANS",  "MEMTRANS"};
  const auto tables = model.tables();
  for (std::size_t i = 0; i < tables.size(); ++i)
    std::cout << "  " << names[i] << " " << tables[i]->rows() << "x" << tables[i]->cols()
              << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DBN part-of-speech tagger"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", rc.format, "Corpus format: slash or tsv");
    sub->add_option("--jobs", rc.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", rc.seed, "Seed for randomized harnesses (pipeline is deterministic)");
  };

  CLI::App* train = app.add_subcommand("train", "Train a model on a tagged corpus");
  train->add_option("--corpus", rc.corpus_path, "Tagged training corpus")->required();
  train->add_option("--model", rc.model_path, "Output model path")->required();
  train->add_flag("--factored", "Factor affix/hyphen features away for in-lexicon tokens");
  train->add_flag("--unfactored", "Always emit every feature");
  train->add_option("--K", rc.clusters, "Memory clusters (0 = one memory value per tag)");
  train->add_option("--lambda", rc.lambda, "Additive smoothing weight");
  train->add_option("--lexicon", rc.lexicon, "full | file:PATH | none");
  train->add_option("--affixes", rc.affixes, "full | file:PFX,SFX | none");
  train->add_option("--min-word-count", rc.features.word_min_count, "Lexicon frequency cutoff");
  train->add_option("--min-affix-count", rc.features.affix_min_count, "Affix frequency cutoff");
  train->add_option("--max-affix-len", rc.features.max_affix_len, "Longest affix, in characters");
  train->add_option("--tagset", rc.tagset_path, "Validate corpus tags against this list");
  train->add_option("--preset", rc.preset, "Experiment preset (see README)");
  add_common(train);

  CLI::App* tag = app.add_subcommand("tag", "Tag raw text with a trained model");
  tag->add_option("--model", rc.model_path, "Model path")->required();
  tag->add_option("--input", rc.input_path, "Raw input, one sentence per line")->required();
  tag->add_option("--output", rc.output_path, "Output path (default stdout)");
  tag->add_option("--decode", rc.decode, "viterbi or posterior");
  add_common(tag);

  CLI::App* eval = app.add_subcommand("eval", "Score a model against a tagged corpus");
  eval->add_option("--model", rc.model_path, "Model path")->required();
  eval->add_option("--corpus", rc.corpus_path, "Tagged gold corpus")->required();
  eval->add_option("--decode", rc.decode, "viterbi or posterior");
  eval->add_option("--top-confusions", rc.top_confusions, "Print the N largest confusions");
  add_common(eval);

  CLI::App* inspect = app.add_subcommand("inspect", "Describe a model file");
  inspect->add_option("--model", rc.model_path, "Model path")->required();
  inspect->add_option("--vocab", rc.vocab_name, "Dump a vocabulary: word, prefix or suffix");
  inspect->add_option("--table", rc.table_name, "CPT to dump a row from");
  inspect->add_option("--row", rc.row_spec, "Row spec: TAG, or TAG,MEMORY for transitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (train->parsed()) {
      if (train->count("--factored") && train->count("--unfactored"))
        throw lt::ArgumentError("--factored and --unfactored are mutually exclusive");
      if (train->count("--unfactored")) rc.features.factored = false;
      if (train->count("--factored")) rc.features.factored = true;
      return cmd_train(rc, train);
    }
    if (tag->parsed()) return cmd_tag(rc);
    if (eval->parsed()) return cmd_eval(rc);
    if (inspect->parsed()) return cmd_inspect(rc);
  } catch (const lt::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const lt::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const lt::TrainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const lt::VersionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const lt::IntegrityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const lt::DecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 6;
  } catch (const lt::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 7;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
