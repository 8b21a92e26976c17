#include "erto/config.hpp"

#include "erto/error.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace erto {

namespace {

using LineMap = std::map<std::string, int>;

int
line_of(const YAML::Node& node)
{
    const auto mark = node.Mark();
    return mark.is_null() ? -1 : mark.line + 1;
}

/// One mapping of the document; remembers which keys were consumed.
class Section
{
  public:
    Section(YAML::Node node, std::string path, LineMap& lines) : m_node(std::move(node)), m_path(std::move(path)), m_lines(lines)
    {
        if (m_node && !m_node.IsNull() && !m_node.IsMap())
        {
            throw ConfigError(m_path, "expected a mapping", line_of(m_node));
        }
    }

    template <typename T>
    void get(const std::string& key, T& out)
    {
        m_known.insert(key);
        const YAML::Node v = child(key);
        if (!v)
        {
            return;
        }
        const std::string full = qualified(key);
        m_lines[full] = line_of(v);
        try
        {
            out = v.as<T>();
        }
        catch (const YAML::Exception&)
        {
            throw ConfigError(full, std::string("expected ") + type_name<T>(), line_of(v));
        }
    }

    void get_algorithms(const std::string& key, std::vector<Algorithm>& out)
    {
        std::vector<std::string> names;
        get(key, names);
        if (!child(key))
        {
            return;
        }
        out.clear();
        for (const auto& n : names)
        {
            try
            {
                out.push_back(algorithm_from_string(n));
            }
            catch (const InvalidParameter&)
            {
                throw ConfigError(qualified(key), "unknown algorithm '" + n + "' (expected ERTO or ExOR)", m_lines[qualified(key)]);
            }
        }
    }

    Section sub(const std::string& key)
    {
        m_known.insert(key);
        return Section(child(key), qualified(key), m_lines);
    }

    /// Reject any key that no get() or sub() asked for.
    void finish() const
    {
        if (!m_node || !m_node.IsMap())
        {
            return;
        }
        for (const auto& kv : m_node)
        {
            const auto key = kv.first.as<std::string>();
            if (!m_known.contains(key))
            {
                throw ConfigError(qualified(key), "unknown key", line_of(kv.first));
            }
        }
    }

  private:
    YAML::Node child(const std::string& key) const
    {
        if (!m_node || !m_node.IsMap())
        {
            return YAML::Node(YAML::NodeType::Undefined);
        }
        for (const auto& kv : m_node)
        {
            if (kv.first.as<std::string>() == key)
            {
                return kv.second;
            }
        }
        return YAML::Node(YAML::NodeType::Undefined);
    }

    std::string qualified(const std::string& key) const { return m_path.empty() ? key : m_path + "." + key; }

    template <typename T>
    static const char* type_name()
    {
        if constexpr (std::is_same_v<T, bool>)
        {
            return "a boolean";
        }
        else if constexpr (std::is_integral_v<T>)
        {
            return "an integer";
        }
        else if constexpr (std::is_floating_point_v<T>)
        {
            return "a number";
        }
        else if constexpr (std::is_same_v<T, std::string>)
        {
            return "a string";
        }
        else
        {
            return "a list";
        }
    }

    YAML::Node m_node;
    std::string m_path;
    LineMap& m_lines;
    std::set<std::string> m_known;
};

void
read(YAML::Node root, ExperimentConfig& c, LineMap& lines)
{
    Section top(std::move(root), "", lines);
    auto& p = c.sim.protocol;

    Section radio = top.sub("radio");
    radio.get("beta", p.radio.beta);
    radio.get("eta", p.radio.eta);
    radio.get("K", p.radio.K);
    radio.get("G", p.radio.G);
    radio.get("noise_w", p.radio.noise_w);
    radio.finish();
    p.range.eta = p.radio.eta;

    Section range = top.sub("range");
    range.get("r_ref_m", p.range.r_ref);
    range.get("p_ref_w", p.range.p_ref);
    range.finish();

    Section power = top.sub("power");
    power.get("p_min_w", p.p_min);
    power.get("p_max_w", p.p_max);
    power.get("p_init_w", p.p_init);
    power.finish();

    Section energy = top.sub("energy");
    energy.get("initial_j", c.sim.initial_energy_j);
    energy.get("receive_w", p.energy.e_r_w);
    energy.get("xi", p.energy.xi);
    energy.get("packet_bits", p.energy.packet_bits);
    energy.get("bandwidth_bps", p.energy.bandwidth_bps);
    energy.finish();

    Section ga = top.sub("ga");
    ga.get("population", p.ga.population);
    ga.get("generations", p.ga.generations);
    ga.get("crossover_prob", p.ga.crossover_prob);
    ga.get("crossover_eta", p.ga.crossover_eta);
    ga.get("mutation_prob", p.ga.mutation_prob);
    ga.get("mutation_eta", p.ga.mutation_eta);
    ga.finish();

    Section topo = top.sub("topology");
    topo.get("feasible_tol", p.feasible_tol);
    topo.get("match_tol", p.match_tol);
    topo.finish();

    Section proto = top.sub("protocol");
    proto.get("slot_s", p.slot_s);
    proto.get("hop_limit", p.hop_limit);
    proto.get("retx_budget", c.sim.retx_budget);
    proto.get("no_route_retries", c.sim.no_route_retries);
    proto.get("queue_capacity", c.sim.queue_capacity);
    proto.get("backoff_window", c.sim.backoff_window);
    proto.get("carrier_sense", c.sim.carrier_sense);
    proto.finish();

    Section net = top.sub("network");
    net.get("width_m", c.sim.area.width);
    net.get("height_m", c.sim.area.height);
    net.get("hello_period_s", c.sim.hello_period_s);
    net.get("staleness_periods", c.sim.staleness_periods);
    net.get("hello_bits", c.sim.hello_bits);
    net.get("cbr_rate_pps", c.sim.cbr_rate_pps);
    net.get("duration_s", c.sim.duration_s);
    net.finish();

    Section sweep = top.sub("sweep");
    std::string layout = c.layout == SweepLayout::Axes ? "axes" : "grid";
    sweep.get("layout", layout);
    if (layout == "axes")
    {
        c.layout = SweepLayout::Axes;
    }
    else if (layout == "grid")
    {
        c.layout = SweepLayout::Grid;
    }
    else
    {
        throw ConfigError("sweep.layout", "expected 'axes' or 'grid'", lines["sweep.layout"]);
    }
    sweep.get("nodes", c.nodes);
    sweep.get("cbr_pairs", c.cbr_pairs);
    sweep.get("fixed_nodes", c.fixed_nodes);
    sweep.get("fixed_cbr_pairs", c.fixed_cbr_pairs);
    sweep.get("replications", c.replications);
    sweep.get_algorithms("algorithms", c.algorithms);
    sweep.get("seed", c.seed);
    sweep.finish();

    Section out = top.sub("output");
    out.get("dir", c.output_dir);
    out.get("trace", c.trace);
    out.finish();

    top.finish();
}

/// Runs every check; `fail(key, message)` throws.
void
check(const ExperimentConfig& c, const std::function<void(const std::string&, const std::string&)>& fail)
{
    const auto& s = c.sim;
    const auto& p = s.protocol;
    auto positive = [&](double v, const char* key) {
        if (!(v > 0.0))
        {
            fail(key, "must be positive");
        }
    };
    positive(p.radio.beta, "radio.beta");
    if (!(p.radio.eta >= 2.0 && p.radio.eta <= 5.0))
    {
        fail("radio.eta", "must lie in [2, 5]");
    }
    positive(p.radio.K, "radio.K");
    positive(p.radio.G, "radio.G");
    positive(p.radio.noise_w, "radio.noise_w");
    positive(p.range.r_ref, "range.r_ref_m");
    positive(p.range.p_ref, "range.p_ref_w");
    positive(p.p_min, "power.p_min_w");
    if (!(p.p_max >= p.p_min))
    {
        fail("power.p_max_w", "must be at least p_min_w");
    }
    if (!(p.p_init >= p.p_min && p.p_init <= p.p_max))
    {
        fail("power.p_init_w", "must lie in [p_min_w, p_max_w]");
    }
    positive(s.initial_energy_j, "energy.initial_j");
    positive(p.energy.e_r_w, "energy.receive_w");
    positive(p.energy.xi, "energy.xi");
    positive(p.energy.packet_bits, "energy.packet_bits");
    positive(p.energy.bandwidth_bps, "energy.bandwidth_bps");
    if (p.ga.population < 4 || p.ga.population % 2 != 0)
    {
        fail("ga.population", "must be even and at least 4");
    }
    if (p.ga.generations < 1)
    {
        fail("ga.generations", "must be at least 1");
    }
    if (!(p.ga.crossover_prob >= 0.0 && p.ga.crossover_prob <= 1.0))
    {
        fail("ga.crossover_prob", "must lie in [0, 1]");
    }
    if (!(p.ga.mutation_prob >= 0.0 && p.ga.mutation_prob <= 1.0))
    {
        fail("ga.mutation_prob", "must lie in [0, 1]");
    }
    if (!(p.ga.crossover_eta >= 0.0))
    {
        fail("ga.crossover_eta", "must be non-negative");
    }
    if (!(p.ga.mutation_eta >= 0.0))
    {
        fail("ga.mutation_eta", "must be non-negative");
    }
    if (!(p.feasible_tol >= 0.0 && p.feasible_tol < 1.0))
    {
        fail("topology.feasible_tol", "must lie in [0, 1)");
    }
    if (!(p.match_tol >= 0.0))
    {
        fail("topology.match_tol", "must be non-negative");
    }
    positive(p.slot_s, "protocol.slot_s");
    if (p.hop_limit < 1)
    {
        fail("protocol.hop_limit", "must be at least 1");
    }
    if (s.retx_budget < 0)
    {
        fail("protocol.retx_budget", "must be non-negative");
    }
    if (s.no_route_retries < 0)
    {
        fail("protocol.no_route_retries", "must be non-negative");
    }
    if (s.queue_capacity < 1)
    {
        fail("protocol.queue_capacity", "must be at least 1");
    }
    if (s.backoff_window < 1)
    {
        fail("protocol.backoff_window", "must be at least 1");
    }
    positive(s.area.width, "network.width_m");
    positive(s.area.height, "network.height_m");
    positive(s.hello_period_s, "network.hello_period_s");
    if (s.staleness_periods < 1)
    {
        fail("network.staleness_periods", "must be at least 1");
    }
    positive(s.hello_bits, "network.hello_bits");
    positive(s.cbr_rate_pps, "network.cbr_rate_pps");
    positive(s.duration_s, "network.duration_s");

    auto node_count = [&](int n, const char* key) {
        if (n < 2)
        {
            fail(key, "node counts must be at least 2");
        }
    };
    auto pair_count = [&](int n, const char* key) {
        if (n < 1)
        {
            fail(key, "CBR pair counts must be at least 1");
        }
    };
    if (c.nodes.empty())
    {
        fail("sweep.nodes", "must not be empty");
    }
    if (c.cbr_pairs.empty())
    {
        fail("sweep.cbr_pairs", "must not be empty");
    }
    for (int n : c.nodes)
    {
        node_count(n, "sweep.nodes");
    }
    for (int n : c.cbr_pairs)
    {
        pair_count(n, "sweep.cbr_pairs");
    }
    node_count(c.fixed_nodes, "sweep.fixed_nodes");
    pair_count(c.fixed_cbr_pairs, "sweep.fixed_cbr_pairs");
    for (const auto& cell : c.cells())
    {
        const auto pairs = static_cast<long long>(cell.n_nodes) * (cell.n_nodes - 1);
        if (cell.n_cbr > pairs)
        {
            fail("sweep.cbr_pairs", "more pairs than distinct ordered node pairs");
        }
    }
    if (c.replications < 1)
    {
        fail("sweep.replications", "must be at least 1");
    }
    if (c.algorithms.empty())
    {
        fail("sweep.algorithms", "must not be empty");
    }
    if (c.output_dir.empty())
    {
        fail("output.dir", "must not be empty");
    }
}

} // namespace

void
ExperimentConfig::validate() const
{
    check(*this, [](const std::string& key, const std::string& msg) { throw ConfigError(key, msg); });
}

std::vector<SweepCell>
ExperimentConfig::cells() const
{
    std::vector<SweepCell> out;
    if (layout == SweepLayout::Grid)
    {
        for (int n : nodes)
        {
            for (int k : cbr_pairs)
            {
                out.push_back({n, k});
            }
        }
        return out;
    }
    for (int n : nodes)
    {
        out.push_back({n, fixed_cbr_pairs});
    }
    for (int k : cbr_pairs)
    {
        const bool seen = std::any_of(out.begin(), out.end(), [&](const SweepCell& c) {
            return c.n_nodes == fixed_nodes && c.n_cbr == k;
        });
        if (!seen)
        {
            out.push_back({fixed_nodes, k});
        }
    }
    return out;
}

SweepSpec
ExperimentConfig::sweep_spec() const
{
    SweepSpec spec;
    spec.base = sim;
    spec.cells = cells();
    spec.algorithms = algorithms;
    spec.replications = replications;
    spec.base_seed = seed;
    return spec;
}

ExperimentConfig
parse_config(std::string_view yaml)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(std::string(yaml));
    }
    catch (const YAML::ParserException& e)
    {
        throw ConfigError("", e.msg, e.mark.is_null() ? -1 : e.mark.line + 1);
    }
    ExperimentConfig c;
    LineMap lines;
    if (root && !root.IsNull())
    {
        if (!root.IsMap())
        {
            throw ConfigError("", "top level must be a mapping", line_of(root));
        }
        read(root, c, lines);
    }
    check(c, [&](const std::string& key, const std::string& msg) {
        const auto it = lines.find(key);
        throw ConfigError(key, msg, it == lines.end() ? -1 : it->second);
    });
    return c;
}

ExperimentConfig
load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("", "cannot read config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string
to_yaml(const ExperimentConfig& c)
{
    const auto& s = c.sim;
    const auto& p = s.protocol;
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;

    e << YAML::Key << "radio" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "beta" << YAML::Value << p.radio.beta;
    e << YAML::Key << "eta" << YAML::Value << p.radio.eta;
    e << YAML::Key << "K" << YAML::Value << p.radio.K;
    e << YAML::Key << "G" << YAML::Value << p.radio.G;
    e << YAML::Key << "noise_w" << YAML::Value << p.radio.noise_w;
    e << YAML::EndMap;

    e << YAML::Key << "range" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "r_ref_m" << YAML::Value << p.range.r_ref;
    e << YAML::Key << "p_ref_w" << YAML::Value << p.range.p_ref;
    e << YAML::EndMap;

    e << YAML::Key << "power" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "p_min_w" << YAML::Value << p.p_min;
    e << YAML::Key << "p_max_w" << YAML::Value << p.p_max;
    e << YAML::Key << "p_init_w" << YAML::Value << p.p_init;
    e << YAML::EndMap;

    e << YAML::Key << "energy" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "initial_j" << YAML::Value << s.initial_energy_j;
    e << YAML::Key << "receive_w" << YAML::Value << p.energy.e_r_w;
    e << YAML::Key << "xi" << YAML::Value << p.energy.xi;
    e << YAML::Key << "packet_bits" << YAML::Value << p.energy.packet_bits;
    e << YAML::Key << "bandwidth_bps" << YAML::Value << p.energy.bandwidth_bps;
    e << YAML::EndMap;

    e << YAML::Key << "ga" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "population" << YAML::Value << p.ga.population;
    e << YAML::Key << "generations" << YAML::Value << p.ga.generations;
    e << YAML::Key << "crossover_prob" << YAML::Value << p.ga.crossover_prob;
    e << YAML::Key << "crossover_eta" << YAML::Value << p.ga.crossover_eta;
    e << YAML::Key << "mutation_prob" << YAML::Value << p.ga.mutation_prob;
    e << YAML::Key << "mutation_eta" << YAML::Value << p.ga.mutation_eta;
    e << YAML::EndMap;

    e << YAML::Key << "topology" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "feasible_tol" << YAML::Value << p.feasible_tol;
    e << YAML::Key << "match_tol" << YAML::Value << p.match_tol;
    e << YAML::EndMap;

    e << YAML::Key << "protocol" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "slot_s" << YAML::Value << p.slot_s;
    e << YAML::Key << "hop_limit" << YAML::Value << p.hop_limit;
    e << YAML::Key << "retx_budget" << YAML::Value << s.retx_budget;
    e << YAML::Key << "no_route_retries" << YAML::Value << s.no_route_retries;
    e << YAML::Key << "queue_capacity" << YAML::Value << s.queue_capacity;
    e << YAML::Key << "backoff_window" << YAML::Value << s.backoff_window;
    e << YAML::Key << "carrier_sense" << YAML::Value << s.carrier_sense;
    e << YAML::EndMap;

    e << YAML::Key << "network" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "width_m" << YAML::Value << s.area.width;
    e << YAML::Key << "height_m" << YAML::Value << s.area.height;
    e << YAML::Key << "hello_period_s" << YAML::Value << s.hello_period_s;
    e << YAML::Key << "staleness_periods" << YAML::Value << s.staleness_periods;
    e << YAML::Key << "hello_bits" << YAML::Value << s.hello_bits;
    e << YAML::Key << "cbr_rate_pps" << YAML::Value << s.cbr_rate_pps;
    e << YAML::Key << "duration_s" << YAML::Value << s.duration_s;
    e << YAML::EndMap;

    e << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "layout" << YAML::Value << (c.layout == SweepLayout::Axes ? "axes" : "grid");
    e << YAML::Key << "nodes" << YAML::Value << YAML::Flow << c.nodes;
    e << YAML::Key << "cbr_pairs" << YAML::Value << YAML::Flow << c.cbr_pairs;
    e << YAML::Key << "fixed_nodes" << YAML::Value << c.fixed_nodes;
    e << YAML::Key << "fixed_cbr_pairs" << YAML::Value << c.fixed_cbr_pairs;
    e << YAML::Key << "replications" << YAML::Value << c.replications;
    e << YAML::Key << "algorithms" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto a : c.algorithms)
    {
        e << std::string(to_string(a));
    }
    e << YAML::EndSeq;
    e << YAML::Key << "seed" << YAML::Value << c.seed;
    e << YAML::EndMap;

    e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "dir" << YAML::Value << c.output_dir;
    e << YAML::Key << "trace" << YAML::Value << c.trace;
    e << YAML::EndMap;

    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

} // namespace erto
