#pragma once

#include <stdexcept>
#include <string>

namespace erto {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition.
class InvalidParameter : public Error
{
  public:
    using Error::Error;
};

/// A node id that does not exist in the world.
class LookupError : public Error
{
  public:
    using Error::Error;
};

/// Delivery probability at or below the usable-link floor.
class SaturationError : public Error
{
  public:
    using Error::Error;
};

/// A candidate with zero delivery probability.
class UnreachableCandidate : public Error
{
  public:
    using Error::Error;
};

/// The candidate forwarding set is empty.
class NoRouteError : public Error
{
  public:
    using Error::Error;
};

/// The optimizer found no feasible decision vector.
class EmptyFrontError : public Error
{
  public:
    using Error::Error;
};

/// Malformed or invalid experiment configuration.
class ConfigError : public Error
{
  public:
    ConfigError(const std::string& key, const std::string& what, int line = -1)
        : Error(format(key, what, line)), m_key(key), m_line(line)
    {
    }

    const std::string& key() const noexcept { return m_key; }
    int line() const noexcept { return m_line; }

  private:
    static std::string format(const std::string& key, const std::string& what, int line)
    {
        std::string msg;
        if (line >= 0)
        {
            msg += "line " + std::to_string(line) + ": ";
        }
        if (!key.empty())
        {
            msg += "'" + key + "': ";
        }
        return msg + what;
    }

    std::string m_key;
    int m_line;
};

} // namespace erto
