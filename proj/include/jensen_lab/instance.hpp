#pragma once

// Self-contained inputs for one verifier call. Used by the fuzzer and miner
// so that any interesting case can be replayed or written out as a job.

#include <variant>
#include <vector>

#include "jensen_lab/jensen.hpp"

namespace jlab {

struct Thm1Instance {
  FunctionSpec f;
  double c;
  SignedMeasure m;
  bool concave = false;
};

struct Cor1Instance {
  FunctionSpec f;
  FunctionSpec p;
  double a;
  double b;
  Cor1Options options{};
};

struct Cor2Instance {
  std::vector<double> points;
  std::vector<double> weights;
  FunctionSpec f;
};

struct Cor3Instance {
  std::vector<double> points;
  FunctionSpec f;
};

struct Thm3Instance {
  FunctionSpec f;
  SignedMeasure m;
  AlmostConvexWitness w;
};

using Instance = std::variant<Thm1Instance, Cor1Instance, Cor2Instance, Cor3Instance, Thm3Instance>;

inline Theorem theorem_of(const Instance& inst) {
  return std::visit(detail::overloaded{
                        [](const Thm1Instance&) { return Theorem::thm1; },
                        [](const Cor1Instance&) { return Theorem::cor1; },
                        [](const Cor2Instance&) { return Theorem::cor2; },
                        [](const Cor3Instance&) { return Theorem::cor3; },
                        [](const Thm3Instance&) { return Theorem::thm3; },
                    },
                    inst);
}

inline JensenReport verify(const Instance& inst, const Settings& s = {}) {
  return std::visit(detail::overloaded{
                        [&](const Thm1Instance& i) { return verify_theorem1(i.f, i.c, i.m, i.concave, s); },
                        [&](const Cor1Instance& i) { return verify_corollary1(i.f, i.p, i.a, i.b, i.options, s); },
                        [&](const Cor2Instance& i) { return verify_corollary2(i.points, i.weights, i.f, s); },
                        [&](const Cor3Instance& i) { return verify_corollary3(i.points, i.f, s); },
                        [&](const Thm3Instance& i) { return verify_theorem3(i.f, i.m, i.w, s); },
                    },
                    inst);
}

}  // namespace jlab
