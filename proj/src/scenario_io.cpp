#include "psf/scenario_io.hpp"

#include <fstream>

namespace psf {

using nlohmann::json;

namespace {

RVector to_rvector(const json& arr, const std::string& field) {
  if (!arr.is_array()) throw ConfigError(field + ": expected an array");
  RVector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ConfigError(field + ": expected numbers");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

json from_rvector(const RVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json channel_to_json(const CMatrix& h) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    json rr = json::array();
    json ri = json::array();
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      rr.push_back(h(r, c).real());
      ri.push_back(h(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return json{{"re", re}, {"im", im}};
}

CMatrix channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ConfigError("channel: expected {\"re\": [[...]], \"im\": [[...]]}");
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty())
    throw ConfigError("channel: re/im must be equal-sized non-empty row arrays");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = static_cast<Eigen::Index>(re[0].size());
  CMatrix h(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const RVector rr = to_rvector(re[static_cast<std::size_t>(r)], "channel.re");
    const RVector ri = to_rvector(im[static_cast<std::size_t>(r)], "channel.im");
    if (rr.size() != cols || ri.size() != cols) throw ConfigError("channel: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) h(r, c) = Complex(rr[c], ri[c]);
  }
  return h;
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field: ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field ") + key + ": " + e.what());
  }
}

}  // namespace

Distribution Distribution::explicit_values(RVector values) {
  Distribution d;
  d.kind_ = Kind::kExplicit;
  d.values_ = std::move(values);
  return d;
}

Distribution Distribution::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw ConfigError("uniform distribution requires lo <= hi");
  Distribution d;
  d.kind_ = Kind::kUniform;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

Distribution Distribution::constant(double value) {
  Distribution d;
  d.kind_ = Kind::kConstant;
  d.lo_ = d.hi_ = value;
  return d;
}

RVector Distribution::sample(int n, Rng& rng) const {
  switch (kind_) {
    case Kind::kExplicit:
      if (values_.size() != n)
        throw ConfigError("explicit per-sensor array has length " + std::to_string(values_.size()) +
                          ", expected " + std::to_string(n));
      return values_;
    case Kind::kUniform: {
      RVector v(n);
      for (int i = 0; i < n; ++i) v[i] = psf::uniform(rng, lo_, hi_);
      return v;
    }
    case Kind::kConstant:
      return RVector::Constant(n, lo_);
  }
  return {};
}

json Distribution::to_json() const {
  switch (kind_) {
    case Kind::kExplicit:
      return from_rvector(values_);
    case Kind::kUniform:
      return json{{"dist", "uniform"}, {"lo", lo_}, {"hi", hi_}};
    case Kind::kConstant:
      return json{{"dist", "constant"}, {"value", lo_}};
  }
  return {};
}

Distribution Distribution::from_json(const json& j, const std::string& field) {
  if (j.is_array()) return explicit_values(to_rvector(j, field));
  if (j.is_number()) return constant(j.get<double>());
  if (j.is_object()) {
    const std::string kind = j.value("dist", "");
    if (kind == "uniform") {
      if (!j.contains("lo") || !j.contains("hi")) throw ConfigError(field + ": uniform needs lo and hi");
      return uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
    }
    if (kind == "constant") {
      if (!j.contains("value")) throw ConfigError(field + ": constant needs value");
      return constant(j.at("value").get<double>());
    }
    throw ConfigError(field + ": unknown distribution '" + kind + "'");
  }
  throw ConfigError(field + ": expected array, number or distribution object");
}

SensorScenario ScenarioTemplate::realize(const SeedStream& stream) const {
  SensorScenario s;
  s.n_sensors = n_sensors;
  s.n_antennas = n_antennas;
  s.path_loss_exp = path_loss_exp;
  s.fc_noise_var = fc_noise_var;
  s.seed = stream.value();
  s.channel = channel;
  Rng d_rng = stream.child(StreamTag::kScenario, 0).engine();
  Rng v_rng = stream.child(StreamTag::kScenario, 1).engine();
  s.distances = distances.sample(n_sensors, d_rng);
  s.sensor_noise_vars = sensor_noise_vars.sample(n_sensors, v_rng);
  s.validate();
  return s;
}

ScenarioTemplate scenario_template_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
  ScenarioTemplate t;
  t.n_sensors = required<int>(j, "n_sensors");
  t.n_antennas = required<int>(j, "n_antennas");
  if (!j.contains("distances")) throw ConfigError("missing field: distances");
  t.distances = Distribution::from_json(j.at("distances"), "distances");
  t.path_loss_exp = j.value("path_loss_exp", 1.0);
  if (!j.contains("sensor_noise_vars")) throw ConfigError("missing field: sensor_noise_vars");
  t.sensor_noise_vars = Distribution::from_json(j.at("sensor_noise_vars"), "sensor_noise_vars");
  t.fc_noise_var = required<double>(j, "fc_noise_var");
  t.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("channel")) t.channel = channel_from_json(j.at("channel"));
  if (t.n_sensors < 1 || t.n_antennas < 1) throw ConfigError("n_sensors and n_antennas must be >= 1");
  return t;
}

json to_json(const ScenarioTemplate& t) {
  json j{{"n_sensors", t.n_sensors},
         {"n_antennas", t.n_antennas},
         {"distances", t.distances.to_json()},
         {"path_loss_exp", t.path_loss_exp},
         {"sensor_noise_vars", t.sensor_noise_vars.to_json()},
         {"fc_noise_var", t.fc_noise_var},
         {"seed", t.seed}};
  if (t.channel) j["channel"] = channel_to_json(*t.channel);
  return j;
}

json to_json(const SensorScenario& s) {
  json j{{"n_sensors", s.n_sensors},
         {"n_antennas", s.n_antennas},
         {"distances", from_rvector(s.distances)},
         {"path_loss_exp", s.path_loss_exp},
         {"sensor_noise_vars", from_rvector(s.sensor_noise_vars)},
         {"fc_noise_var", s.fc_noise_var},
         {"seed", s.seed}};
  if (s.channel) j["channel"] = channel_to_json(*s.channel);
  return j;
}

SensorScenario scenario_from_json(const json& j) {
  const ScenarioTemplate t = scenario_template_from_json(j);
  try {
    return t.realize(SeedStream(t.seed));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SensorScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace psf
