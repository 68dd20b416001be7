// SPDX-License-Identifier: Apache-2.0

#include "rtslip/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rtslip/io.hpp"

namespace rtslip
{

namespace
{

std::vector<double> to_double_vector(const nlohmann::json &j, const std::string &key)
{
  if (!j.is_array())
  {
    throw std::invalid_argument("config key '" + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto &v : j)
  {
    if (!v.is_number())
    {
      throw std::invalid_argument("config key '" + key + "' must be an array of numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

double positive(double v, const std::string &key)
{
  if (!(v > 0.0))
  {
    throw std::invalid_argument("config key '" + key + "' must be positive");
  }
  return v;
}

std::string json_escape(const std::string &s)
{
  std::string out;
  out.reserve(s.size());
  for (char c : s)
  {
    if (c == '"' || c == '\\')
    {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

RunConfig parse_config_json(const std::string &text)
{
  nlohmann::json doc;
  try
  {
    doc = nlohmann::json::parse(text);
  }
  catch (const nlohmann::json::parse_error &e)
  {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object())
  {
    throw std::invalid_argument("config must be a JSON object");
  }

  RunConfig config;
  for (const auto &[key, value] : doc.items())
  {
    if (key == "profile_kind")
    {
      config.profile_kind = profile_kind_from_string(value.get<std::string>());
    }
    else if (key == "profile_params")
    {
      config.profile_params = to_double_vector(value, key);
    }
    else if (key == "g")
    {
      config.g = positive(value.get<double>(), key);
    }
    else if (key == "mu")
    {
      config.mu = positive(value.get<double>(), key);
    }
    else if (key == "L")
    {
      config.L = positive(value.get<double>(), key);
    }
    else if (key == "xi_minus")
    {
      config.slip.xi_minus = value.get<double>();
      if (config.slip.xi_minus < 0.0)
      {
        throw std::invalid_argument("config key 'xi_minus' must be >= 0");
      }
    }
    else if (key == "xi_plus")
    {
      config.slip.xi_plus = value.get<double>();
      if (config.slip.xi_plus < 0.0)
      {
        throw std::invalid_argument("config key 'xi_plus' must be >= 0");
      }
    }
    else if (key == "n_modes")
    {
      config.n_modes = value.get<int>();
      if (config.n_modes < 4)
      {
        throw std::invalid_argument("config key 'n_modes' must be >= 4");
      }
    }
    else if (key == "tol")
    {
      config.tol = positive(value.get<double>(), key);
    }
    else if (key == "k_lattice_jmax")
    {
      const int jmax = value.get<int>();
      if (jmax < 1)
      {
        throw std::invalid_argument("config key 'k_lattice_jmax' must be >= 1");
      }
      config.k_lattice_jmax = jmax;
    }
    else if (key == "k_grid")
    {
      auto ks = to_double_vector(value, key);
      for (double k : ks)
      {
        if (!(k > 0.0))
        {
          throw std::invalid_argument("config key 'k_grid' entries must be positive");
        }
      }
      config.k_grid = std::move(ks);
    }
    else if (key == "m_modes")
    {
      config.m_modes = value.get<int>();
      if (config.m_modes < 1)
      {
        throw std::invalid_argument("config key 'm_modes' must be >= 1");
      }
    }
    else if (key == "output_dir")
    {
      config.output_dir = value.get<std::string>();
    }
    else
    {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }

  // Re-validate the profile's standing hypothesis eagerly.
  make_profile(config.profile_kind, config.profile_params);
  return config;
}

RunConfig load_config_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

std::string config_to_json(const RunConfig &config)
{
  std::ostringstream out;
  out << "{\n";
  out << "  \"profile_kind\": \"" << to_string(config.profile_kind) << "\",\n";
  out << "  \"profile_params\": [";
  for (std::size_t i = 0; i < config.profile_params.size(); ++i)
  {
    out << (i ? ", " : "") << format_double(config.profile_params[i]);
  }
  out << "],\n";
  out << "  \"g\": " << format_double(config.g) << ",\n";
  out << "  \"mu\": " << format_double(config.mu) << ",\n";
  out << "  \"L\": " << format_double(config.L) << ",\n";
  out << "  \"xi_minus\": " << format_double(config.slip.xi_minus) << ",\n";
  out << "  \"xi_plus\": " << format_double(config.slip.xi_plus) << ",\n";
  out << "  \"n_modes\": " << config.n_modes << ",\n";
  out << "  \"tol\": " << format_double(config.tol) << ",\n";
  if (config.k_lattice_jmax)
  {
    out << "  \"k_lattice_jmax\": " << *config.k_lattice_jmax << ",\n";
  }
  if (config.k_grid)
  {
    out << "  \"k_grid\": [";
    for (std::size_t i = 0; i < config.k_grid->size(); ++i)
    {
      out << (i ? ", " : "") << format_double((*config.k_grid)[i]);
    }
    out << "],\n";
  }
  out << "  \"m_modes\": " << config.m_modes << ",\n";
  out << "  \"output_dir\": \"" << json_escape(config.output_dir) << "\"\n";
  out << "}\n";
  return out.str();
}

bool operator==(const RunConfig &a, const RunConfig &b)
{
  return a.profile_kind == b.profile_kind && a.profile_params == b.profile_params &&
         a.g == b.g && a.mu == b.mu && a.L == b.L &&
         a.slip.xi_minus == b.slip.xi_minus && a.slip.xi_plus == b.slip.xi_plus &&
         a.n_modes == b.n_modes && a.tol == b.tol &&
         a.k_lattice_jmax == b.k_lattice_jmax && a.k_grid == b.k_grid &&
         a.m_modes == b.m_modes && a.output_dir == b.output_dir;
}

}  // namespace rtslip
