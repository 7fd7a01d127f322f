// src/data/wav-io.cc

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

#include "data/wav-io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace uncse {

namespace {

void PutU32(std::vector<char> *buf, uint32_t v) {
  for (int i = 0; i < 4; ++i) buf->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU16(std::vector<char> *buf, uint16_t v) {
  buf->push_back(static_cast<char>(v & 0xff));
  buf->push_back(static_cast<char>(v >> 8));
}

uint32_t GetU32(const unsigned char *p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t GetU16(const unsigned char *p) { return p[0] | (p[1] << 8); }

}  // namespace

size_t WriteWav(const std::string &path, const Waveform &wave) {
  wave.Check();
  const uint32_t data_bytes = static_cast<uint32_t>(wave.Size() * 2);
  std::vector<char> buf;
  buf.reserve(44 + data_bytes);
  buf.insert(buf.end(), {'R', 'I', 'F', 'F'});
  PutU32(&buf, 36 + data_bytes);
  buf.insert(buf.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutU32(&buf, 16);
  PutU16(&buf, 1);  // PCM
  PutU16(&buf, 1);  // mono
  PutU32(&buf, static_cast<uint32_t>(wave.sample_rate));
  PutU32(&buf, static_cast<uint32_t>(wave.sample_rate) * 2);
  PutU16(&buf, 2);
  PutU16(&buf, 16);
  buf.insert(buf.end(), {'d', 'a', 't', 'a'});
  PutU32(&buf, data_bytes);
  size_t clipped = 0;
  for (double x : wave.samples) {
    double q = std::nearbyint(x * 32768.0);
    if (q > 32767.0 || q < -32768.0) {
      ++clipped;
      q = std::clamp(q, -32768.0, 32767.0);
    }
    PutU16(&buf, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!os) throw ConfigError("write failed: " + path);
  if (clipped > 0)
    UNCSE_WARN << path << ": " << clipped << " samples clipped";
  return clipped;
}

Waveform ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw ConfigError(path + ": not a RIFF/WAVE file");
  size_t pos = 12;
  bool have_fmt = false;
  Waveform wave;
  while (pos + 8 <= bytes.size()) {
    const uint32_t size = GetU32(&bytes[pos + 4]);
    const unsigned char *body = &bytes[pos + 8];
    if (pos + 8 + size > bytes.size())
      throw ConfigError(path + ": truncated chunk");
    if (std::memcmp(&bytes[pos], "fmt ", 4) == 0) {
      if (size < 16) throw ConfigError(path + ": short fmt chunk");
      if (GetU16(body) != 1 || GetU16(body + 2) != 1 || GetU16(body + 14) != 16)
        throw ConfigError(path + ": only 16-bit PCM mono is supported");
      wave.sample_rate = static_cast<int>(GetU32(body + 4));
      have_fmt = true;
    } else if (std::memcmp(&bytes[pos], "data", 4) == 0) {
      if (!have_fmt) throw ConfigError(path + ": data before fmt");
      wave.samples.resize(size / 2);
      for (size_t i = 0; i < size / 2; ++i)
        wave.samples[i] =
            static_cast<int16_t>(GetU16(body + 2 * i)) / 32768.0;
      return wave;
    }
    pos += 8 + size + (size & 1);
  }
  throw ConfigError(path + ": no data chunk");
}

}  // namespace uncse
