#include "torusfix/classification.hpp"

#include "torusfix/errors.hpp"

namespace torusfix {

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::I: return "I";
        case CaseTag::II: return "II";
        case CaseTag::III: return "III";
        case CaseTag::IV: return "IV";
        case CaseTag::V: return "V";
        case CaseTag::Unclassifiable: return "Unclassifiable";
    }
    return "Unclassifiable";
}

CaseTag parse_case_tag(std::string_view text) {
    if (text == "I") return CaseTag::I;
    if (text == "II") return CaseTag::II;
    if (text == "III") return CaseTag::III;
    if (text == "IV") return CaseTag::IV;
    if (text == "V") return CaseTag::V;
    if (text == "Unclassifiable") return CaseTag::Unclassifiable;
    throw ParseError("unknown case tag '" + std::string(text) + "'");
}

IntVec2 eigenvector_one(const IntMatrix2& B) {
    if (B.is_identity()) throw IdentityMatrix("B is the identity; every vector is fixed");
    const IntMatrix2 K = B - IntMatrix2::identity();
    if (sgn(K.det()) != 0) {
        throw NoEigenvector("det(B - I) = " + K.det().get_str() + " != 0, so 1 is not an eigenvalue of " +
                            B.to_string());
    }
    // K has rank 1; its kernel is orthogonal to any nonzero row (r1, r2).
    Integer r1 = K.m11, r2 = K.m12;
    if (sgn(r1) == 0 && sgn(r2) == 0) {
        r1 = K.m21;
        r2 = K.m22;
    }
    IntVec2 v{-r2, r1};
    const Integer g = gcd(v.x, v.y);
    v.x /= g;
    v.y /= g;
    if (sgn(v.x) < 0 || (sgn(v.x) == 0 && sgn(v.y) < 0)) v = -v;
    return v;
}

IntVec2 complete_basis(const IntVec2& v, const BundleSpec& bundle, [[maybe_unused]] const IntMatrix2& B) {
    const IntVec2 av = bundle.gluing * v;
    const Integer d = IntMatrix2::from_columns(v, av).det();
    if (d == 1) return av;
    if (d == -1) return -av;
    // s v1 + t v2 = 1, so det[v | (-t, s)] = 1.
    const GcdResult e = extended_gcd(v.x, v.y);
    if (e.g != 1) throw InvalidArgument("vector (" + v.x.get_str() + "," + v.y.get_str() + ") is not primitive");
    return {-e.t, e.s};
}

namespace {

Classification unclassifiable(std::string reason) {
    Classification out;
    out.case_tag = CaseTag::Unclassifiable;
    out.reason = std::move(reason);
    return out;
}

}  // namespace

Classification classify(const BundleSpec& bundle, const FiberedMapSpec& f) {
    const IntMatrix2& A = bundle.gluing;
    const IntMatrix2& B = f.fiber;
    if (!A.is_unimodular()) {
        return unclassifiable("gluing matrix " + A.to_string() + " has determinant " + A.det().get_str() +
                              ", expected +1 or -1");
    }
    const HomValidation hv = validate_hom(f, bundle);
    if (!hv.valid) return unclassifiable(hv.violation);

    if (B.is_identity()) {
        Classification out;
        out.case_tag = CaseTag::I;
        out.A1 = A;
        out.B1 = B;
        out.c1t = f.c1;
        out.c2t = f.c2;
        return out;
    }
    const Integer d = (B - IntMatrix2::identity()).det();
    if (sgn(d) != 0) {
        return unclassifiable("fiber restriction not deformable: det(B - I) = " + d.get_str());
    }

    const IntVec2 v = eigenvector_one(B);
    const IntVec2 w = complete_basis(v, bundle, B);
    const IntMatrix2 basis = IntMatrix2::from_columns(v, w);
    const IntMatrix2 P = inverse_unimodular(basis);

    Classification out;
    out.P = P;
    out.A1 = P * A * basis;
    out.B1 = P * B * basis;
    const IntVec2 ct = P * IntVec2{f.c1, f.c2};
    out.c1t = ct.x;
    out.c2t = ct.y;

    if (out.B1.m11 != 1 || sgn(out.B1.m21) != 0) {
        throw InternalMismatch("conjugated fiber matrix " + out.B1.to_string() + " does not fix e1");
    }
    if (sgn(out.A1.m21) != 0) {
        out.case_tag = CaseTag::Unclassifiable;
        out.reason = "gluing matrix does not preserve the fixed line of B: A1 = " + out.A1.to_string();
        return out;
    }

    const Integer& alpha = out.A1.m11;
    const Integer& beta = out.A1.m22;
    const Integer lhs = out.a3() * (out.b4() - 1);
    Integer required;
    if (alpha == 1 && beta == 1) {
        out.case_tag = CaseTag::II;
        required = 0;
    } else if (alpha == 1 && beta == -1) {
        out.case_tag = CaseTag::III;
        required = -2 * out.b3();
    } else if (alpha == -1 && beta == -1) {
        out.case_tag = CaseTag::IV;
        required = 0;
    } else if (alpha == -1 && beta == 1) {
        out.case_tag = CaseTag::V;
        required = 2 * out.b3();
    } else {
        out.case_tag = CaseTag::Unclassifiable;
        out.reason = "diagonal of A1 = " + out.A1.to_string() + " is not in {+1,-1}^2";
        return out;
    }
    if (lhs != required) {
        const std::string tag = to_string(out.case_tag);
        out.case_tag = CaseTag::Unclassifiable;
        out.reason = "side condition of case " + tag + " fails: a3(b4-1) = " + lhs.get_str() + ", expected " +
                     required.get_str();
    }
    return out;
}

}  // namespace torusfix
