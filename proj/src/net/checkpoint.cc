// src/net/checkpoint.cc

// Copyright 2026  uncse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "net/checkpoint.h"

#include <fstream>
#include <sstream>

#include "base/text.h"

namespace uncse {

namespace {

class LineReader {
 public:
  LineReader(std::istream &is, std::string path) : is_(is), path_(path) {}

  std::vector<std::string> Expect(const std::string &key, size_t min_fields) {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      if (!Trim(line).empty()) break;
    }
    if (!is_ && line.empty()) Fail("unexpected end of file, wanted " + key);
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.empty() || fields[0] != key || fields.size() < min_fields)
      Fail("expected '" + key + "'");
    return fields;
  }

  std::vector<double> Numbers(size_t count) {
    std::string line;
    if (!std::getline(is_, line)) Fail("missing value row");
    ++line_no_;
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.size() != count)
      Fail("expected " + std::to_string(count) + " values");
    std::vector<double> out;
    out.reserve(count);
    for (const std::string &f : fields) out.push_back(ParseDouble(f));
    return out;
  }

  [[noreturn]] void Fail(const std::string &what) {
    throw ConfigError(path_ + ":" + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream &is_;
  std::string path_;
  int line_no_ = 0;
};

void WriteRow(std::ostream &os, const double *data, Eigen::Index count) {
  std::string line;
  for (Eigen::Index i = 0; i < count; ++i) {
    if (i > 0) line += ' ';
    line += FormatDouble(data[i]);
  }
  os << line << '\n';
}

}  // namespace

void SaveCheckpoint(const std::string &path, const Checkpoint &ckpt) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write checkpoint " + path);
  const MaskNet &net = ckpt.net;
  os << "uncse-masknet " << kCheckpointVersion << '\n';
  os << "seed " << ckpt.seed << '\n';
  os << "loss " << (ckpt.loss.empty() ? "unknown" : ckpt.loss) << '\n';
  os << "stft " << ckpt.stft.frame_len << ' ' << ckpt.stft.hop << '\n';
  os << "features " << ckpt.features.context << ' ' << ckpt.features.num_bins
     << '\n';
  os << "layers " << net.LayerDims().size();
  for (int d : net.LayerDims()) os << ' ' << d;
  os << '\n';
  const DropoutSpec &dropout = net.Dropout();
  os << "dropout " << FormatDouble(dropout.p) << ' '
     << (dropout.active_at_inference ? 1 : 0) << ' ' << dropout.layers.size();
  for (int l : dropout.layers) os << ' ' << l;
  os << '\n';
  for (size_t l = 0; l < net.Layers().size(); ++l) {
    const DenseLayer &layer = net.Layers()[l];
    os << "weight " << l << ' ' << layer.weight.rows() << ' '
       << layer.weight.cols() << '\n';
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
        rows = layer.weight;
    for (Eigen::Index r = 0; r < rows.rows(); ++r)
      WriteRow(os, rows.row(r).data(), rows.cols());
    os << "bias " << l << ' ' << layer.bias.size() << '\n';
    WriteRow(os, layer.bias.data(), layer.bias.size());
  }
  os << "end\n";
  if (!os) throw ConfigError("write failed: " + path);
}

Checkpoint LoadCheckpoint(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read checkpoint " + path);
  LineReader reader(is, path);
  Checkpoint ckpt;
  auto header = reader.Expect("uncse-masknet", 2);
  if (ParseLong(header[1]) != kCheckpointVersion)
    reader.Fail("unsupported checkpoint version " + header[1]);
  ckpt.seed = ParseUint64(reader.Expect("seed", 2)[1]);
  ckpt.loss = reader.Expect("loss", 2)[1];
  auto stft = reader.Expect("stft", 3);
  ckpt.stft.frame_len = static_cast<int>(ParseLong(stft[1]));
  ckpt.stft.hop = static_cast<int>(ParseLong(stft[2]));
  auto feats = reader.Expect("features", 3);
  ckpt.features.context = static_cast<int>(ParseLong(feats[1]));
  ckpt.features.num_bins = static_cast<int>(ParseLong(feats[2]));
  auto layers = reader.Expect("layers", 2);
  const long num_dims = ParseLong(layers[1]);
  if (num_dims < 2 || static_cast<long>(layers.size()) != num_dims + 2)
    reader.Fail("bad layer list");
  auto dropout_fields = reader.Expect("dropout", 4);
  DropoutSpec dropout;
  dropout.p = ParseDouble(dropout_fields[1]);
  dropout.active_at_inference = ParseLong(dropout_fields[2]) != 0;
  const long num_drop = ParseLong(dropout_fields[3]);
  if (static_cast<long>(dropout_fields.size()) != num_drop + 4)
    reader.Fail("bad dropout layer list");
  for (long i = 0; i < num_drop; ++i)
    dropout.layers.push_back(static_cast<int>(ParseLong(dropout_fields[4 + i])));

  std::vector<DenseLayer> net_layers;
  for (long l = 0; l + 1 < num_dims; ++l) {
    auto w = reader.Expect("weight", 4);
    const long rows = ParseLong(w[2]), cols = ParseLong(w[3]);
    if (rows != ParseLong(layers[l + 3]) || cols != ParseLong(layers[l + 2]))
      reader.Fail("weight shape disagrees with layer list");
    DenseLayer layer;
    layer.weight.resize(rows, cols);
    for (long r = 0; r < rows; ++r) {
      const std::vector<double> row = reader.Numbers(cols);
      for (long c = 0; c < cols; ++c) layer.weight(r, c) = row[c];
    }
    auto b = reader.Expect("bias", 3);
    if (ParseLong(b[2]) != rows) reader.Fail("bias size mismatch");
    const std::vector<double> bias = reader.Numbers(rows);
    layer.bias = Eigen::Map<const Eigen::VectorXd>(bias.data(), rows);
    net_layers.push_back(std::move(layer));
  }
  reader.Expect("end", 1);
  ckpt.net = MaskNet(std::move(net_layers), std::move(dropout));
  ckpt.stft.Check();
  ckpt.features.Check();
  if (ckpt.net.InputDim() != ckpt.features.Dim() ||
      ckpt.net.NumBins() != ckpt.stft.NumBins())
    throw ConfigError(path + ": network shape does not match feature/STFT "
                             "settings");
  return ckpt;
}

}  // namespace uncse
