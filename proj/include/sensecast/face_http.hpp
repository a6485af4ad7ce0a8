#pragma once

// HTTP-backed face annotation client. Kept behind configuration; tests use
// FixtureFaceClient only. The endpoint is expected to answer
// GET <path>?image_ref=<ref> with {"age": <years>} or {"age": null}.

#include <memory>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "sensecast/demographics.hpp"
#include "sensecast/error.hpp"

namespace sensecast {

class HttpFaceClient : public FaceAnnotationClient {
public:
    HttpFaceClient(std::string host, int port, std::string path = "/detect")
        : host_(std::move(host)), port_(port), path_(std::move(path)) {}

    FaceAnnotation annotate(const std::string& image_ref) override {
        httplib::Client client(host_, port_);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(10, 0);
        httplib::Params params{{"image_ref", image_ref}};
        auto res = client.Get(path_, params, httplib::Headers{});
        if (!res) throw ClientError("face service unreachable: " + host_ + ":" + std::to_string(port_));
        if (res->status != 200) {
            throw ClientError("face service returned status " + std::to_string(res->status));
        }
        try {
            const nlohmann::json body = nlohmann::json::parse(res->body);
            FaceAnnotation ann;
            if (body.contains("age") && body["age"].is_number()) {
                ann.age_estimate = body["age"].get<double>();
            }
            return ann;
        } catch (const nlohmann::json::exception& e) {
            throw ClientError(std::string("face service returned malformed body: ") + e.what());
        }
    }

private:
    std::string host_;
    int port_;
    std::string path_;
};

}  // namespace sensecast
