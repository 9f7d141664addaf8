#include <benchmark/benchmark.h>

#include <sstream>
#include <string>
#include <vector>

#include "gprobe/conllu.hpp"
#include "gprobe/probe.hpp"
#include "gprobe/random.hpp"
#include "gprobe/sgns.hpp"
#include "gprobe/stemmer.hpp"

namespace {

using namespace gprobe;

LabeledSet random_set(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : rows[i]) x = rng.normal();
    labels[i] = static_cast<int>(i % 2);
  }
  return LabeledSet::from_rows(rows, labels);
}

void BM_ProbeForwardBatch(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const ProbeModel m = ProbeModel::glorot(dim, 2 * dim, 1);
  const LabeledSet batch = random_set(32, dim, 2);
  for (auto _ : state) benchmark::DoNotOptimize(forward_batch(m, batch.x));
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_ProbeForwardBatch)->Arg(300)->Arg(1024);

void BM_ProbeGradients(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const ProbeModel m = ProbeModel::glorot(dim, 2 * dim, 1);
  const LabeledSet batch = random_set(32, dim, 3);
  for (auto _ : state) benchmark::DoNotOptimize(gradients(m, batch));
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_ProbeGradients)->Arg(300)->Arg(1024);

void BM_StemSwedish(benchmark::State& state) {
  const std::vector<std::string> words{"jaktkarlarne", "huset", "barnen", "äpplena", "kärleksfullt",
                                       "hopplöst", "slutligen", "advokaterna", "kvinnornas", "bilen"};
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(stem_swedish(w));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_StemSwedish);

void BM_SgnsStep(benchmark::State& state) {
  SgnsConfig cfg;
  cfg.dim = 300;
  cfg.buckets = 1 << 16;
  const Vocab vocab = Vocab::build({{"hund", "hus", "bil", "katt", "stol", "gata", "bok"}}, 1);
  SgnsParams<float> params(cfg.dim, vocab.size(), 7);
  const SubwordTable table = build_subword_table(vocab, cfg, params);
  const std::vector<std::size_t> negatives{2, 3, 4, 5, 6};
  for (auto _ : state) benchmark::DoNotOptimize(sgns_step<float>(params, table.slots[0], 1, negatives, 1e-4));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SgnsStep);

void BM_ParseConllu(benchmark::State& state) {
  std::ostringstream text;
  for (int s = 0; s < 200; ++s) {
    text << "# sent_id = " << s << "\n";
    text << "1\tDet\tden\tPRON\t_\tGender=Neut\t3\tnsubj\t_\t_\n";
    text << "2\tär\tvara\tAUX\t_\t_\t3\tcop\t_\t_\n";
    text << "3\thuset\thus\tNOUN\t_\tDefinite=Def|Gender=Neut|Number=Sing\t0\troot\t_\t_\n\n";
  }
  const std::string data = text.str();
  for (auto _ : state) {
    std::istringstream in(data);
    benchmark::DoNotOptimize(parse_conllu(in, ParseMode::Strict));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_ParseConllu);

}  // namespace

BENCHMARK_MAIN();
