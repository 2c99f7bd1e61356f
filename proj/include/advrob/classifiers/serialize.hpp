#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "advrob/classifiers/classifier.hpp"
#include "advrob/data/csv.hpp"

namespace advrob {

// Text format, one token stream:
//   advrob-classifier 1
//   linear <d>        then w₁ … w_d, then b
//   quadratic <d>     then the d×d matrix row by row
//   kernel poly <q> <d> <n> | kernel rbf <σ²> <d> <n>
//                     then the intercept, then n rows of: coefficient s₁ … s_d
// Numbers are printed with 17 significant digits so values round-trip.

inline void write_classifier(std::ostream& out, const Classifier& c) {
    out << "advrob-classifier 1\n";
    auto row = [&](std::span<const double> v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            out << (i ? " " : "") << format_double(v[i]);
        out << '\n';
    };
    if (const auto* lin = std::get_if<LinearClassifier>(&c)) {
        out << "linear " << lin->dim() << '\n';
        row(lin->w);
        out << format_double(lin->b) << '\n';
    } else if (const auto* quad = std::get_if<QuadraticClassifier>(&c)) {
        const std::size_t d = quad->dim();
        out << "quadratic " << d << '\n';
        for (std::size_t i = 0; i < d; ++i)
            row(quad->matrix().dense().data().subspan(i * d, d));
    } else {
        const auto& k = std::get<KernelClassifier>(c);
        out << "kernel " << (k.kernel.kind == KernelKind::polynomial ? "poly " + std::to_string(k.kernel.degree)
                                                                      : "rbf " + format_double(k.kernel.sigma2))
            << ' ' << k.dim() << ' ' << k.support_points.size() << '\n';
        out << format_double(k.intercept) << '\n';
        for (std::size_t i = 0; i < k.support_points.size(); ++i) {
            out << format_double(k.coefficients[i]) << ' ';
            row(k.support_points[i]);
        }
    }
}

inline Classifier read_classifier(std::istream& in) {
    auto bad = [](const std::string& what) -> Error { return Error(ErrorKind::format, "classifier file: " + what); };
    std::string magic, kind;
    int version = 0;
    if (!(in >> magic >> version) || magic != "advrob-classifier" || version != 1)
        throw bad("missing 'advrob-classifier 1' header");
    if (!(in >> kind))
        throw bad("missing kind tag");
    auto read_vec = [&](std::size_t n) {
        Vector v(n);
        for (double& x : v)
            if (!(in >> x))
                throw bad("truncated numeric data");
        return v;
    };
    std::size_t d = 0;
    if (kind == "linear") {
        if (!(in >> d) || d == 0)
            throw bad("bad dimension");
        Vector w = read_vec(d);
        const double b = read_vec(1)[0];
        return LinearClassifier(std::move(w), b);
    }
    if (kind == "quadratic") {
        if (!(in >> d) || d == 0)
            throw bad("bad dimension");
        DenseMatrix a(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                a(i, j) = read_vec(1)[0];
        return QuadraticClassifier(SymMatrix(a));
    }
    if (kind == "kernel") {
        std::string kk;
        std::size_t n = 0;
        KernelClassifier k;
        if (!(in >> kk))
            throw bad("missing kernel kind");
        if (kk == "poly") {
            int q = 0;
            if (!(in >> q))
                throw bad("missing degree");
            k.kernel = KernelSpec::polynomial(q);
        } else if (kk == "rbf") {
            double s2 = 0;
            if (!(in >> s2))
                throw bad("missing width");
            k.kernel = KernelSpec::rbf(s2);
        } else {
            throw bad("unknown kernel '" + kk + "'");
        }
        if (!(in >> d >> n) || d == 0)
            throw bad("bad dimensions");
        k.intercept = read_vec(1)[0];
        for (std::size_t i = 0; i < n; ++i) {
            k.coefficients.push_back(read_vec(1)[0]);
            k.support_points.push_back(read_vec(d));
        }
        k.validate();
        return k;
    }
    throw bad("unknown kind '" + kind + "'");
}

inline void save_classifier(const std::string& path, const Classifier& c) {
    std::ofstream out(path);
    if (!out)
        fail(ErrorKind::format, "cannot write '" + path + "'");
    write_classifier(out, c);
}

inline Classifier load_classifier(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::format, "cannot open '" + path + "'");
    return read_classifier(in);
}

} // namespace advrob
