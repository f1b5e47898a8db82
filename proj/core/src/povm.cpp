#include "qel/povm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qel/spin.hpp"

namespace qel {

namespace {

bool power_of_two(int v)
{
    return v >= 1 && (v & (v - 1)) == 0;
}

CMatrix spinor_projector(double nx, double ny, double nz)
{
    // |n><n| = (I + n . sigma)/2
    CMatrix p(2, 2);
    p << (1.0 + nz) / 2.0, cplx(nx, -ny) / 2.0, //
        cplx(nx, ny) / 2.0, (1.0 - nz) / 2.0;
    return p;
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

bool ValidationReport::ok(double tol) const
{
    if (completeness_residual > tol)
        return false;
    for (const auto& [label, min_eig] : min_eigenvalues)
        if (min_eig < -tol)
            return false;
    return true;
}

Povm Povm::unchecked(std::vector<PovmElement> elements)
{
    Povm m;
    m.dim_ = elements.empty() ? 0 : static_cast<int>(elements[0].op.rows());
    m.elements_ = std::move(elements);
    return m;
}

Povm Povm::make(std::vector<PovmElement> elements, double tol)
{
    if (elements.empty())
        throw IncompletePovm("povm: no elements");
    const int dim = static_cast<int>(elements[0].op.rows());
    if (!power_of_two(dim))
        throw DimensionMismatch("povm: dimension must be a power of two");
    for (const PovmElement& e : elements) {
        if (e.op.rows() != dim || e.op.cols() != dim)
            throw DimensionMismatch("povm: element '" + e.label +
                                    "' has mismatched dimension");
        if (hermiticity_residual(e.op) > 1e-12)
            throw NotHermitian("povm: element '" + e.label +
                               "' is not Hermitian");
    }
    Povm m = unchecked(std::move(elements));
    const ValidationReport report = validate(m);
    for (const auto& [label, min_eig] : report.min_eigenvalues)
        if (min_eig < -tol)
            throw NonPositiveElement("povm: element '" + label +
                                     "' has eigenvalue " +
                                     std::to_string(min_eig));
    if (report.completeness_residual > tol)
        throw IncompletePovm("povm: completeness residual " +
                             std::to_string(report.completeness_residual));
    return m;
}

ValidationReport validate(const Povm& m)
{
    ValidationReport report;
    const int dim = m.dim();
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const PovmElement& e : m.elements()) {
        const HermEig eig = herm_eig(e.op);
        report.min_eigenvalues.emplace_back(e.label, eig.eigenvalues.minCoeff());
        sum += e.op;
    }
    report.completeness_residual =
        (sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    return report;
}

Povm von_neumann_z()
{
    CMatrix up = CMatrix::Zero(2, 2), down = CMatrix::Zero(2, 2);
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    return Povm::unchecked({{"+", up}, {"-", down}});
}

Povm tetrahedron_povm()
{
    const double r = 1.0 / std::sqrt(3.0);
    const double verts[4][3] = {
        {r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}};

    std::vector<PovmElement> elements;

    // singlet |s> = (|01> - |10|)/sqrt(2)
    Eigen::Vector4cd s;
    s << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    elements.push_back({"sigma", s * s.adjoint()});

    for (int i = 0; i < 4; ++i) {
        const CMatrix p = spinor_projector(verts[i][0], verts[i][1], verts[i][2]);
        elements.push_back(
            {"n" + std::to_string(i + 1), 0.75 * kron(p, p)});
    }
    return Povm::unchecked(std::move(elements));
}

Povm rank_one_refinement(const Povm& m)
{
    std::vector<PovmElement> refined;
    for (const PovmElement& e : m.elements()) {
        const HermEig eig = herm_eig(e.op);
        int piece = 0;
        for (int k = 0; k < eig.eigenvalues.size(); ++k) {
            const double lambda = eig.eigenvalues[k];
            if (lambda <= 1e-12)
                continue;
            const CMatrix v = eig.eigenvectors.col(k);
            refined.push_back({e.label + "#" + std::to_string(piece++),
                               lambda * (v * v.adjoint())});
        }
    }
    return Povm::make(std::move(refined));
}

Povm spin_block_refinement(const Povm& m, int n)
{
    if (m.dim() != (1 << n))
        throw DimensionMismatch("spin_block_refinement: dim != 2^n");
    const std::vector<SpinBlock> blocks = spin_blocks(n);

    std::vector<PovmElement> refined;
    for (const PovmElement& e : m.elements()) {
        const HermEig eig = herm_eig(e.op);
        int significant = 0;
        for (int k = 0; k < eig.eigenvalues.size(); ++k)
            if (eig.eigenvalues[k] > 1e-12)
                ++significant;
        if (significant > 1)
            throw RankNotOne("spin_block_refinement: element '" + e.label +
                             "' has rank > 1");
        for (const SpinBlock& blk : blocks) {
            CMatrix piece = blk.projector * e.op * blk.projector;
            if (piece.trace().real() < 1e-12)
                continue;
            std::ostringstream label;
            label << e.label << "|s=";
            for (std::size_t j = 0; j < blk.labels.size(); ++j) {
                if (j)
                    label << ",";
                label << blk.labels[j];
            }
            refined.push_back({label.str(), std::move(piece)});
        }
    }
    return Povm::make(std::move(refined));
}

Povm rotate_povm(const Povm& m, const CMatrix& u, int n)
{
    if (u.rows() != 2 || u.cols() != 2)
        throw DimensionMismatch("rotate_povm: u must be 2x2");
    if (m.dim() != (1 << n))
        throw DimensionMismatch("rotate_povm: dim != 2^n");
    CMatrix un = CMatrix::Identity(1, 1);
    for (int j = 0; j < n; ++j)
        un = kron(un, u);
    std::vector<PovmElement> rotated;
    rotated.reserve(m.size());
    for (const PovmElement& e : m.elements())
        rotated.push_back({e.label, un * e.op * un.adjoint()});
    return Povm::unchecked(std::move(rotated));
}

Povm load_povm_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FileFormatError("cannot open POVM file: " + path);

    struct Entry {
        int row, col;
        cplx value;
    };
    std::vector<std::string> order;
    std::map<std::string, std::vector<Entry>> entries;
    int max_index = -1;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty())
            continue;
        {
            std::string squeezed = t;
            squeezed.erase(std::remove_if(squeezed.begin(), squeezed.end(),
                                          [](char c) { return c == ' '; }),
                           squeezed.end());
            if (lineno == 1 && squeezed == "label,row,col,re,im")
                continue;
        }
        std::istringstream ss(t);
        std::string label, field;
        if (!std::getline(ss, label, ','))
            throw FileFormatError("povm file: bad row at line " +
                                  std::to_string(lineno));
        label = trim(label);
        int idx[2] = {0, 0};
        double part[2] = {0.0, 0.0};
        for (int f = 0; f < 4; ++f) {
            if (!std::getline(ss, field, ','))
                throw FileFormatError("povm file: bad row at line " +
                                      std::to_string(lineno));
            try {
                if (f < 2)
                    idx[f] = std::stoi(trim(field));
                else
                    part[f - 2] = std::stod(trim(field));
            } catch (const std::exception&) {
                throw FileFormatError("povm file: bad number at line " +
                                      std::to_string(lineno));
            }
        }
        if (idx[0] < 0 || idx[1] < 0)
            throw FileFormatError("povm file: negative index at line " +
                                  std::to_string(lineno));
        if (entries.find(label) == entries.end())
            order.push_back(label);
        entries[label].push_back({idx[0], idx[1], cplx(part[0], part[1])});
        max_index = std::max({max_index, idx[0], idx[1]});
    }
    if (order.empty())
        throw FileFormatError("povm file has no data rows: " + path);

    int dim = 1;
    while (dim <= max_index)
        dim *= 2;
    std::vector<PovmElement> elements;
    for (const std::string& label : order) {
        CMatrix op = CMatrix::Zero(dim, dim);
        for (const Entry& e : entries[label])
            op(e.row, e.col) += e.value;
        elements.push_back({label, std::move(op)});
    }
    return Povm::make(std::move(elements));
}

} // namespace qel
