#pragma once

#include "cubepaths/pcset.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cubepaths {

struct PvAction {
    enum class Kind { P, V };
    Kind kind;
    std::string semaphore;
};

struct PvProcess {
    std::string name;
    std::vector<PvAction> actions;
};

struct PvSemaphore {
    std::string name;
    int capacity;
};

/// Semaphores and processes in declaration order.
struct PvProgram {
    std::vector<PvSemaphore> semaphores;
    std::vector<PvProcess> processes;

    int capacity(std::string_view semaphore) const;
};

/**
 * Parses
 *
 *     sem a 1;
 *     proc p: P(a).V(a);
 *
 * Declarations come before processes; '#' starts a comment. Throws
 * ParseError (with line and column) on syntax errors, unknown or duplicate
 * names, V without a held P, and processes that alone exceed a capacity.
 * A process may finish while holding; it releases everything on exit.
 */
PvProgram parse_pv(std::string_view text);

/// Holds of each semaphore (declaration order) by one process at grid
/// coordinate c: c = 2k is the vertex after k actions, c = 2k+1 the step
/// performing action k+1.
std::vector<int> pv_holds(const PvProgram& program, std::size_t process, int c);

/**
 * The product of the process timelines with every cube dropped whose closure
 * meets a point where some semaphore is held beyond its capacity. Cells are
 * labelled with their grid coordinates, e.g. "(0-1,2)" for the edge where the
 * first process performs its first action while the second sits after two.
 */
struct CompiledPv {
    PrecubicalSet complex;
    std::size_t bottom;  // every process at its start
    std::size_t top;     // every process finished
};

CompiledPv compile_pv(const PvProgram& program);

/// Vertices other than top with no outgoing edge, ascending.
std::vector<std::size_t> deadlock_candidates(const CompiledPv& compiled);

}  // namespace cubepaths
